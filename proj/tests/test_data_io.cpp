#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tzone/data_io.hpp"
#include "tzone/errors.hpp"
#include "tzone/km_estimator.hpp"
#include "tzone/rng.hpp"
#include "tzone/timestamp.hpp"

using namespace tzone;
namespace fs = std::filesystem;

namespace {

std::vector<TickRecord> ticks_at(std::initializer_list<std::pair<double, double>> rows) {
    std::vector<TickRecord> ticks;
    for (const auto& [t, price] : rows) ticks.push_back({t, price, std::nullopt});
    return ticks;
}

fs::path write_temp(const std::string& name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << body;
    return p;
}

}  // namespace

TEST_SUITE("data_io") {

TEST_CASE("timestamp parsing and formatting") {
    // 2011-09-06T09:00:00Z
    CHECK(parse_timestamp("2011-09-06T09:00:00Z") == doctest::Approx(1315299600.0));
    CHECK(parse_timestamp("2011-09-06 09:00:00") == doctest::Approx(1315299600.0));
    CHECK(parse_timestamp("2011-09-06T09:00:00.250Z") == doctest::Approx(1315299600.250));
    CHECK(parse_timestamp("2011-09-06") == doctest::Approx(1315267200.0));
    CHECK(parse_timestamp("1315299600250") == doctest::Approx(1315299600.250));
    CHECK(format_iso8601(1315299600.250) == "2011-09-06T09:00:00.250Z");
    CHECK(parse_timestamp(format_iso8601(1315299600.999)) == doctest::Approx(1315299600.999));
    CHECK_THROWS_AS(parse_timestamp("yesterday"), DataError);
    CHECK_THROWS_AS(parse_timestamp("2011-13-01T00:00:00Z"), DataError);
}

TEST_CASE("median of a three-tick window") {
    const auto cg = coarse_grain(ticks_at({{1.0, 1.21}, {4.0, 1.20}, {8.0, 1.22}}));
    REQUIRE(cg.series.size() == 1);
    CHECK(cg.series.values[0] == doctest::Approx(std::log(1.21)).epsilon(1e-15));
    CHECK(cg.series.tau_hours == doctest::Approx(10.0 / 3600.0));
}

TEST_CASE("lower median for even counts") {
    const auto cg = coarse_grain(ticks_at({{0.5, 1.20}, {2.0, 1.21}}));
    CHECK(cg.series.values[0] == doctest::Approx(std::log(1.20)).epsilon(1e-15));
}

TEST_CASE("one tick per window passes through") {
    const auto cg = coarse_grain(ticks_at({{5.0, 1.21}, {15.0, 1.22}, {25.0, 1.23}}));
    REQUIRE(cg.series.size() == 3);
    CHECK(cg.series.values[0] == doctest::Approx(std::log(1.21)));
    CHECK(cg.series.values[2] == doctest::Approx(std::log(1.23)));
    for (auto carried : cg.carried) CHECK(carried == 0);
}

TEST_CASE("slots are anchored to the first tick's window") {
    // first tick at t = 12s lies in slot [10, 20)
    const auto cg = coarse_grain(ticks_at({{12.0, 1.20}, {31.0, 1.21}}));
    CHECK(cg.series.t0_hours == doctest::Approx(10.0 / 3600.0));
    REQUIRE(cg.series.size() == 3);
    CHECK(cg.carried[1] == 1);
}

TEST_CASE("empty slots carry the previous value forward") {
    const auto cg = coarse_grain(ticks_at({{1.0, 1.20}, {55.0, 1.23}}));
    REQUIRE(cg.series.size() == 6);
    for (int k = 1; k <= 4; ++k) {
        CHECK(cg.series.values[k] == cg.series.values[0]);
        CHECK(cg.carried[static_cast<std::size_t>(k)] == 1);
    }
    CHECK(cg.series.values[5] == doctest::Approx(std::log(1.23)));
}

TEST_CASE("gap mask drops long carried runs including the bridging jump") {
    // slots: real, carried x3, real  -> run of 3
    const auto cg = coarse_grain(ticks_at({{1.0, 1.20}, {45.0, 1.23}}));
    REQUIRE(cg.series.size() == 5);

    const auto lenient = gap_mask(cg, 3);  // run of 3 allowed
    for (auto bit : lenient) CHECK(bit == 1);

    const auto strict = gap_mask(cg, 2);  // run of 3 is too long
    REQUIRE(strict.size() == 4);
    CHECK(strict[0] == 0);  // into first carried slot
    CHECK(strict[1] == 0);
    CHECK(strict[2] == 0);
    CHECK(strict[3] == 0);  // the jump back to real data
}

TEST_CASE("outlier moves a window median at most to the adjacent order statistic") {
    const auto clean = coarse_grain(ticks_at({{1.0, 1.20}, {3.0, 1.21}, {6.0, 1.22}}));
    const auto spiked =
        coarse_grain(ticks_at({{1.0, 1.20}, {3.0, 1.21}, {6.0, 1.22}, {8.0, 12.1}}));
    const double moved = std::exp(spiked.series.values[0]);
    CHECK(moved == doctest::Approx(1.21).epsilon(1e-12));  // lower median of four
    CHECK(std::abs(moved - std::exp(clean.series.values[0])) <= 1.22 - 1.21 + 1e-12);
}

TEST_CASE("coarse-graining an already uniform one-per-slot series is the log transform") {
    std::vector<TickRecord> ticks;
    for (int k = 0; k < 20; ++k) ticks.push_back({k * 10.0, 1.20 + 1e-4 * k, std::nullopt});
    const auto cg = coarse_grain(ticks);
    REQUIRE(cg.series.size() == 20);
    for (int k = 0; k < 20; ++k)
        CHECK(cg.series.values[k] == doctest::Approx(std::log(1.20 + 1e-4 * k)).epsilon(1e-15));
}

TEST_CASE("empty input is a data error") {
    CHECK_THROWS_AS(coarse_grain({}), DataError);
}

TEST_CASE("loading the price-layout fixture") {
    const auto loaded = load_ticks(std::string(TZONE_FIXTURE_DIR) + "/ticks_price.csv");
    CHECK(loaded.ticks.size() == 11);
    CHECK(loaded.n_malformed == 0);
    const auto cg = coarse_grain(loaded.ticks);
    // 09:00:00 through 09:01:51 spans 12 slots
    REQUIRE(cg.series.size() == 12);
    CHECK(cg.series.values[0] == doctest::Approx(std::log(1.2021)).epsilon(1e-12));
    CHECK(cg.series.values[1] == doctest::Approx(std::log(1.2018)).epsilon(1e-12));
    CHECK(cg.series.values[2] == doctest::Approx(std::log(1.2025)).epsilon(1e-12));
    CHECK(cg.series.values[10] == doctest::Approx(std::log(1.2028)).epsilon(1e-12));
    CHECK(cg.series.values[11] == doctest::Approx(std::log(1.2033)).epsilon(1e-12));
    std::int64_t carried = 0;
    for (auto c : cg.carried) carried += c;
    CHECK(carried == 7);
    const auto mask = gap_mask(cg, 5);
    std::int64_t masked = 0;
    for (auto m : mask) masked += 1 - m;
    CHECK(masked == 8);  // seven zero increments plus the bridge
}

TEST_CASE("loading the bid/ask fixture uses mid prices") {
    const auto loaded = load_ticks(std::string(TZONE_FIXTURE_DIR) + "/ticks_bidask.csv");
    REQUIRE(loaded.ticks.size() == 8);
    CHECK(loaded.ticks[0].price == doctest::Approx(1.2021).epsilon(1e-12));
    CHECK(loaded.ticks[0].t_epoch_s == doctest::Approx(1315299600.200));
    REQUIRE(loaded.ticks[0].bid_ask.has_value());
    CHECK(loaded.ticks[0].bid_ask->first == 1.20195);
}

TEST_CASE("malformed rows are counted and sampled; too many is fatal") {
    const auto few_bad = write_temp("tzone_ticks_fewbad.csv",
                                    "timestamp,price\n"
                                    "1000,1.20\n1010,not_a_number\n1020,1.21\n1030,1.22\n"
                                    "1040,1.23\n1050,1.24\n1060,1.25\n1070,1.26\n1080,1.27\n"
                                    "1090,1.28\n1100,1.29\n1110,1.30\n1120,1.31\n1130,1.32\n"
                                    "1140,1.33\n1150,1.34\n1160,1.35\n1170,1.36\n1180,1.37\n"
                                    "1190,1.38\n1200,1.39\n1210,1.40\n1220,1.41\n1230,1.42\n"
                                    "1240,1.43\n1250,1.44\n1260,1.45\n1270,1.46\n1280,1.47\n"
                                    "1290,1.48\n1300,1.49\n1310,1.50\n1320,1.51\n1330,1.52\n"
                                    "1340,1.53\n1350,1.54\n1360,1.55\n1370,1.56\n1380,1.57\n"
                                    "1390,1.58\n1400,1.59\n1410,1.60\n1420,1.61\n1430,1.62\n"
                                    "1440,1.63\n1450,1.64\n1460,1.65\n1470,1.66\n1480,1.67\n"
                                    "1490,1.68\n1500,1.69\n1510,1.70\n1520,1.71\n1530,1.72\n"
                                    "1540,1.73\n1550,1.74\n1560,1.75\n1570,1.76\n1580,1.77\n"
                                    "1590,1.78\n1600,1.79\n1610,1.80\n1620,1.81\n1630,1.82\n"
                                    "1640,1.83\n1650,1.84\n1660,1.85\n1670,1.86\n1680,1.87\n"
                                    "1690,1.88\n1700,1.89\n1710,1.90\n1720,1.91\n1730,1.92\n"
                                    "1740,1.93\n1750,1.94\n1760,1.95\n1770,1.96\n1780,1.97\n"
                                    "1790,1.98\n1800,1.99\n1810,2.00\n1820,2.01\n1830,2.02\n"
                                    "1840,2.03\n1850,2.04\n1860,2.05\n1870,2.06\n1880,2.07\n"
                                    "1890,2.08\n1900,2.09\n1910,2.10\n1920,2.11\n1930,2.12\n"
                                    "1940,2.13\n1950,2.14\n1960,2.15\n1970,2.16\n1980,2.17\n"
                                    "1990,2.18\n2000,2.19\n2010,2.20\n");
    const auto loaded = load_ticks(few_bad.string());
    CHECK(loaded.n_malformed == 1);
    CHECK(loaded.ticks.size() == 101);
    REQUIRE(loaded.bad_samples.size() == 1);
    CHECK(loaded.bad_samples[0] == "1010,not_a_number");
    fs::remove(few_bad);

    const auto many_bad = write_temp("tzone_ticks_manybad.csv",
                                     "timestamp,price\n1000,1.20\nbad,row\nworse;row\n");
    CHECK_THROWS_AS(load_ticks(many_bad.string()), DataError);
    fs::remove(many_bad);

    const auto bad_header = write_temp("tzone_ticks_badheader.csv", "when,how_much\n1,2\n");
    CHECK_THROWS_AS(load_ticks(bad_header.string()), DataError);
    fs::remove(bad_header);

    std::string crossed_body = "timestamp,bid,ask\n1000,1.21,1.20\n";  // bid above ask
    for (int i = 1; i <= 150; ++i)
        crossed_body += std::to_string(1000 + 10 * i) + ",1.20,1.21\n";
    const auto crossed = write_temp("tzone_ticks_crossed.csv", crossed_body);
    const auto cross_loaded = load_ticks(crossed.string());
    CHECK(cross_loaded.n_malformed == 1);
    CHECK(cross_loaded.ticks.size() == 150);
    fs::remove(crossed);
}

TEST_CASE("mask csv round trip") {
    const std::vector<std::uint8_t> mask = {1, 1, 0, 1, 0, 0, 1};
    const auto tmp = fs::temp_directory_path() / "tzone_mask_rt.csv";
    write_mask_csv(mask, tmp.string());
    CHECK(read_mask_csv(tmp.string()) == mask);
    fs::remove(tmp);

    const auto bad = write_temp("tzone_mask_bad.csv", "valid\n1\n2\n");
    CHECK_THROWS_AS(read_mask_csv(bad.string()), DataError);
    fs::remove(bad);
}

TEST_CASE("out-of-order rows are sorted on load") {
    const auto shuffled = write_temp("tzone_ticks_shuffled.csv",
                                     "timestamp,price\n3000,1.23\n1000,1.20\n2000,1.22\n");
    const auto loaded = load_ticks(shuffled.string());
    REQUIRE(loaded.ticks.size() == 3);
    CHECK(loaded.ticks[0].price == 1.20);
    CHECK(loaded.ticks[2].price == 1.23);
    fs::remove(shuffled);
}

TEST_CASE("irregular synthetic ticks round trip through the estimator") {
    // A diffusion observed at jittered tick times (1..10 s apart). Median
    // coarse-graining plus carry-forward keeps the total squared increment
    // budget, so the pooled volatility estimate stays unbiased.
    NormalStream normal(606, 0);
    NormalStream jitter(707, 1);
    const double sigma_hourly = 2e-3;
    const double sigma_sec = sigma_hourly / 60.0;
    std::vector<TickRecord> ticks;
    ticks.reserve(100000);
    double s = 0.0, t = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double dt = 1.0 + 9.0 * jitter.uniform();
        t += dt;
        s += sigma_sec * std::sqrt(dt) * normal();
        ticks.push_back({t, 1.20 * std::exp(s), std::nullopt});
    }
    const auto cg = coarse_grain(ticks);
    BinConfig bins;
    bins.n_bins = 20;
    bins.min_count = 500;
    const auto est = estimate(cg.series, bins);
    double weighted = 0.0, w = 0.0;
    for (const auto& bin : est.bins) {
        weighted += static_cast<double>(bin.count) * bin.g_hat * bin.g_hat;
        w += static_cast<double>(bin.count);
    }
    const double g_pooled = std::sqrt(weighted / w);
    CHECK(g_pooled == doctest::Approx(sigma_hourly).epsilon(0.05));
}

}  // TEST_SUITE
