#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "dataset.hpp"

using namespace oqrc;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("oqrc_dataset_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

// Hand-built dataset: 4 zones x 12 samples x 3 days with controllable
// humidity so normalization arithmetic is easy to check.
CorrosionDataset make_manual(double test_humidity_day2 = 30.0) {
    CorrosionDataset ds;
    for (int zone = 1; zone <= 4; ++zone) {
        ZoneSplit split;
        split.zone = zone;
        for (int id = 0; id < 12; ++id) {
            CorrosionSample s;
            s.zone = zone;
            s.sample = id;
            const bool is_test = id >= 10;
            for (int d = 0; d < 3; ++d) {
                DayRecord rec;
                rec.day = d;
                rec.pitting = 0.01 * (d + 1);
                rec.humidity = 10.0 + 10.0 * d;  // train range [10, 30]
                if (is_test && d == 2) rec.humidity = test_humidity_day2;
                rec.temperature = 20.0 + 5.0 * d;
                s.days.push_back(rec);
            }
            ds.samples.push_back(std::move(s));
            if (is_test) split.test_ids.push_back(id);
            else split.train_ids.push_back(id);
        }
        ds.split.push_back(std::move(split));
    }
    return ds;
}

}  // namespace

TEST_CASE("synthetic corpus structure") {
    const CorrosionDataset ds = synth_generate(5, default_zone_params());
    CHECK(ds.samples.size() == 48);
    CHECK(ds.days_per_sample() == 14);
    CHECK(ds.zone_ids() == std::vector<int>{1, 2, 3, 4});
    for (const auto& split : ds.split) {
        CHECK(split.train_ids.size() == 10);
        CHECK(split.test_ids.size() == 2);
    }
    for (const auto& s : ds.samples) {
        REQUIRE(s.days.size() == 14);
        for (std::size_t d = 0; d < s.days.size(); ++d) {
            CHECK(s.days[d].day == static_cast<int>(d));
            CHECK(s.days[d].pitting >= 0.0);
            CHECK(s.days[d].pitting <= 1.0);
        }
    }
}

TEST_CASE("synthetic corpus behavior") {
    auto params = default_zone_params();

    SUBCASE("determinism") {
        const CorrosionDataset a = synth_generate(9, params);
        const CorrosionDataset b = synth_generate(9, params);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
            for (std::size_t d = 0; d < a.samples[i].days.size(); ++d) {
                CHECK(a.samples[i].days[d].pitting == b.samples[i].days[d].pitting);
                CHECK(a.samples[i].days[d].humidity == b.samples[i].days[d].humidity);
            }
        }
    }

    SUBCASE("zero noise collapses a zone to identical samples") {
        for (auto& p : params) p.noise_scale = 0.0;
        const CorrosionDataset ds = synth_generate(3, params);
        const auto& reference = ds.sample_at(1, 0);
        for (int id = 1; id < 12; ++id) {
            const auto& s = ds.sample_at(1, id);
            for (std::size_t d = 0; d < s.days.size(); ++d) {
                CHECK(s.days[d].pitting == reference.days[d].pitting);
            }
        }
    }

    SUBCASE("zero growth keeps pitting constant") {
        for (auto& p : params) {
            p.growth_rate = 0.0;
            p.noise_scale = 0.0;
        }
        const CorrosionDataset ds = synth_generate(3, params);
        for (const auto& s : ds.samples) {
            for (const auto& d : s.days) CHECK(d.pitting == s.days.front().pitting);
        }
    }

    SUBCASE("noiseless growth is monotone") {
        for (auto& p : params) p.noise_scale = 0.0;
        const CorrosionDataset ds = synth_generate(3, params);
        for (const auto& s : ds.samples) {
            for (std::size_t d = 1; d < s.days.size(); ++d) {
                CHECK(s.days[d].pitting >= s.days[d - 1].pitting);
            }
        }
    }

    SUBCASE("zones have visibly distinct mean curves") {
        const CorrosionDataset ds = synth_generate(3, params);
        std::vector<std::vector<double>> means(4, std::vector<double>(14, 0.0));
        for (const auto& s : ds.samples) {
            for (std::size_t d = 0; d < s.days.size(); ++d) {
                means[static_cast<std::size_t>(s.zone - 1)][d] += s.days[d].pitting / 12.0;
            }
        }
        for (int za = 0; za < 4; ++za) {
            for (int zb = za + 1; zb < 4; ++zb) {
                double gap = 0.0;
                for (int d = 0; d < 14; ++d) {
                    gap = std::max(gap, std::abs(means[za][d] - means[zb][d]));
                }
                CHECK(gap > params[0].noise_scale);
            }
        }
    }

    SUBCASE("invalid parameters are rejected") {
        auto bad = default_zone_params();
        bad[0].saturation = 0.0;
        CHECK_THROWS_AS(synth_generate(1, bad), std::invalid_argument);
        bad = default_zone_params();
        bad[1].growth_rate = -0.5;
        CHECK_THROWS_AS(synth_generate(1, bad), std::invalid_argument);
        bad = default_zone_params();
        bad[2].initial_pitting = 0.5;
        CHECK_THROWS_AS(synth_generate(1, bad), std::invalid_argument);
    }
}

TEST_CASE("csv round trip") {
    TempDir tmp;
    const CorrosionDataset ds = synth_generate(11, default_zone_params());
    const std::string path = (tmp.path / "corpus.csv").string();
    save_csv(ds, path);
    const CorrosionDataset back = load_csv(path);
    REQUIRE(back.samples.size() == ds.samples.size());
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        CHECK(back.samples[i].zone == ds.samples[i].zone);
        CHECK(back.samples[i].sample == ds.samples[i].sample);
        for (std::size_t d = 0; d < ds.samples[i].days.size(); ++d) {
            CHECK(back.samples[i].days[d].pitting == ds.samples[i].days[d].pitting);
            CHECK(back.samples[i].days[d].humidity == ds.samples[i].days[d].humidity);
            CHECK(back.samples[i].days[d].temperature == ds.samples[i].days[d].temperature);
        }
    }
}

TEST_CASE("csv errors name the offending row") {
    TempDir tmp;
    const std::string header = "zone,sample,day,pitting,tarnishing,humidity,temperature\n";

    SUBCASE("day gap") {
        const auto p = tmp.path / "gap.csv";
        write_text(p, header +
                          "1,0,0,0.01,,50,20\n"
                          "1,0,2,0.02,,51,21\n");
        CHECK_THROWS_WITH_AS(load_csv(p.string()), doctest::Contains("row 3"), ParseError);
    }

    SUBCASE("pitting outside [0,1]") {
        const auto p = tmp.path / "pit.csv";
        write_text(p, header + "1,0,0,1.5,,50,20\n");
        CHECK_THROWS_WITH_AS(load_csv(p.string()), doctest::Contains("row 2"), ParseError);
    }

    SUBCASE("missing column") {
        const auto p = tmp.path / "col.csv";
        write_text(p, "zone,sample,day,pitting,humidity,temperature\n1,0,0,0.01,50,20\n");
        CHECK_THROWS_WITH_AS(load_csv(p.string()), doctest::Contains("tarnishing"), ParseError);
    }

    SUBCASE("wrong zone count") {
        const auto p = tmp.path / "zones.csv";
        std::string text = header;
        for (int sample = 0; sample < 12; ++sample) {
            text += "1," + std::to_string(sample) + ",0,0.01,,50,20\n";
            text += "1," + std::to_string(sample) + ",1,0.02,,51,21\n";
        }
        write_text(p, text);
        CHECK_THROWS_WITH_AS(load_csv(p.string()), doctest::Contains("4 climate zones"), ParseError);
    }

    SUBCASE("missing file") { CHECK_THROWS_AS(load_csv("/nonexistent/x.csv"), IoError); }
}

TEST_CASE("normalization") {
    SUBCASE("train min-max maps to [0,1]") {
        const CorrosionDataset norm = normalize(make_manual());
        const auto& train = norm.sample_at(1, 0);
        CHECK(train.days[0].humidity == 0.0);  // train min
        CHECK(train.days[1].humidity == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(train.days[2].humidity == 1.0);  // train max
        CHECK(norm.normalized);
        CHECK(norm.out_of_range_test_values == 0);
    }

    SUBCASE("test values outside the train range are preserved and flagged") {
        const CorrosionDataset norm = normalize(make_manual(40.0));
        const auto& test = norm.sample_at(1, 10);
        CHECK(test.days[2].humidity == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(norm.out_of_range_test_values == 8);  // 2 test samples x 4 zones
    }

    SUBCASE("constant channel is rejected") {
        CorrosionDataset flat = make_manual();
        for (auto& s : flat.samples) {
            for (auto& d : s.days) d.temperature = 25.0;
        }
        CHECK_THROWS_AS(normalize(flat), std::runtime_error);
    }

    SUBCASE("double normalization is rejected") {
        const CorrosionDataset norm = normalize(make_manual());
        CHECK_THROWS_AS(normalize(norm), std::invalid_argument);
    }

    SUBCASE("stored parameters reapply to fresh data") {
        const CorrosionDataset norm = normalize(make_manual());
        const CorrosionDataset again = apply_normalization(make_manual(), norm.normalization);
        const auto& a = norm.sample_at(2, 4);
        const auto& b = again.sample_at(2, 4);
        for (std::size_t d = 0; d < a.days.size(); ++d) {
            CHECK(a.days[d].humidity == b.days[d].humidity);
            CHECK(a.days[d].temperature == b.days[d].temperature);
        }
    }
}
