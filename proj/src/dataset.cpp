#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rng.hpp"

namespace oqrc {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, std::size_t row, const char* column) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ParseError("row " + std::to_string(row) + ": cannot parse " + column + " value '" +
                         field + "'");
    }
    return v;
}

int parse_int(const std::string& field, std::size_t row, const char* column) {
    int v = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ParseError("row " + std::to_string(row) + ": cannot parse " + column + " value '" +
                         field + "'");
    }
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void validate_structure(CorrosionDataset& ds) {
    std::map<int, std::vector<CorrosionSample*>> by_zone;
    for (auto& s : ds.samples) by_zone[s.zone].push_back(&s);
    if (by_zone.size() != 4) {
        throw ParseError("dataset must contain exactly 4 climate zones, found " +
                         std::to_string(by_zone.size()));
    }
    int day_count = -1;
    for (auto& [zone, samples] : by_zone) {
        if (samples.size() != kSamplesPerZone) {
            throw ParseError("zone " + std::to_string(zone) + " has " +
                             std::to_string(samples.size()) + " samples, expected " +
                             std::to_string(kSamplesPerZone));
        }
        for (const auto* s : samples) {
            if (day_count == -1) day_count = static_cast<int>(s->days.size());
            if (static_cast<int>(s->days.size()) != day_count) {
                throw ParseError("zone " + std::to_string(zone) + " sample " +
                                 std::to_string(s->sample) + " has " +
                                 std::to_string(s->days.size()) + " days, expected " +
                                 std::to_string(day_count));
            }
        }
    }
    if (day_count < 2) throw ParseError("samples need at least 2 days");

    // Default split: per zone, the first 10 sample ids train, the last 2 test.
    ds.split.clear();
    for (auto& [zone, samples] : by_zone) {
        ZoneSplit split;
        split.zone = zone;
        std::vector<int> ids;
        for (const auto* s : samples) ids.push_back(s->sample);
        std::sort(ids.begin(), ids.end());
        split.train_ids.assign(ids.begin(), ids.begin() + kTrainPerZone);
        split.test_ids.assign(ids.begin() + kTrainPerZone, ids.end());
        ds.split.push_back(std::move(split));
    }
}

}  // namespace

std::vector<int> CorrosionDataset::zone_ids() const {
    std::vector<int> ids;
    for (const auto& s : split) ids.push_back(s.zone);
    return ids;
}

int CorrosionDataset::days_per_sample() const {
    return samples.empty() ? 0 : static_cast<int>(samples.front().days.size());
}

const CorrosionSample& CorrosionDataset::sample_at(int zone, int sample) const {
    for (const auto& s : samples) {
        if (s.zone == zone && s.sample == sample) return s;
    }
    throw std::invalid_argument("dataset has no sample " + std::to_string(sample) + " in zone " +
                                std::to_string(zone));
}

const ZoneSplit& CorrosionDataset::split_for(int zone) const {
    for (const auto& s : split) {
        if (s.zone == zone) return s;
    }
    throw std::invalid_argument("dataset has no zone " + std::to_string(zone));
}

CorrosionDataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_line(line);
    const std::vector<std::string> expected = {"zone",       "sample",   "day",        "pitting",
                                               "tarnishing", "humidity", "temperature"};
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const auto& name : expected) {
        if (!col.count(name)) throw ParseError("missing column '" + name + "' in header");
    }

    struct RawRow {
        std::size_t row;
        DayRecord record;
    };
    std::map<std::pair<int, int>, std::vector<RawRow>> grouped;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() < header.size()) {
            throw ParseError("row " + std::to_string(row) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        DayRecord rec;
        const int zone = parse_int(fields[col["zone"]], row, "zone");
        const int sample = parse_int(fields[col["sample"]], row, "sample");
        rec.day = parse_int(fields[col["day"]], row, "day");
        rec.pitting = parse_double(fields[col["pitting"]], row, "pitting");
        if (rec.pitting < 0.0 || rec.pitting > 1.0) {
            throw ParseError("row " + std::to_string(row) + ": pitting " + fmt_double(rec.pitting) +
                             " outside [0, 1]");
        }
        const std::string& tarn = fields[col["tarnishing"]];
        if (!tarn.empty()) rec.tarnishing = parse_double(tarn, row, "tarnishing");
        rec.humidity = parse_double(fields[col["humidity"]], row, "humidity");
        rec.temperature = parse_double(fields[col["temperature"]], row, "temperature");
        grouped[{zone, sample}].push_back({row, rec});
    }

    CorrosionDataset ds;
    for (auto& [key, rows] : grouped) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const RawRow& a, const RawRow& b) { return a.record.day < b.record.day; });
        CorrosionSample s;
        s.zone = key.first;
        s.sample = key.second;
        int expected_day = 0;
        for (const auto& r : rows) {
            if (r.record.day != expected_day) {
                throw ParseError("row " + std::to_string(r.row) + ": zone " +
                                 std::to_string(s.zone) + " sample " + std::to_string(s.sample) +
                                 " has day " + std::to_string(r.record.day) + " where day " +
                                 std::to_string(expected_day) + " was expected");
            }
            ++expected_day;
            s.days.push_back(r.record);
        }
        ds.samples.push_back(std::move(s));
    }
    validate_structure(ds);
    return ds;
}

void save_csv(const CorrosionDataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "zone,sample,day,pitting,tarnishing,humidity,temperature\n";
    for (const auto& s : dataset.samples) {
        for (const auto& d : s.days) {
            out << s.zone << ',' << s.sample << ',' << d.day << ',' << fmt_double(d.pitting) << ',';
            if (d.tarnishing) out << fmt_double(*d.tarnishing);
            out << ',' << fmt_double(d.humidity) << ',' << fmt_double(d.temperature) << '\n';
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

CorrosionDataset normalize_with(const CorrosionDataset& dataset,
                                const std::vector<ZoneNormalization>& params) {
    CorrosionDataset out = dataset;
    out.normalized = true;
    out.normalization = params;
    out.out_of_range_test_values = 0;
    for (auto& s : out.samples) {
        const auto it = std::find_if(params.begin(), params.end(),
                                     [&](const ZoneNormalization& z) { return z.zone == s.zone; });
        if (it == params.end()) {
            throw std::invalid_argument("normalization parameters missing zone " +
                                        std::to_string(s.zone));
        }
        const auto& split = out.split_for(s.zone);
        const bool is_test = std::find(split.test_ids.begin(), split.test_ids.end(), s.sample) !=
                             split.test_ids.end();
        for (auto& d : s.days) {
            d.humidity = (d.humidity - it->humidity_min) / (it->humidity_max - it->humidity_min);
            d.temperature =
                (d.temperature - it->temperature_min) / (it->temperature_max - it->temperature_min);
            if (is_test) {
                if (d.humidity < 0.0 || d.humidity > 1.0) ++out.out_of_range_test_values;
                if (d.temperature < 0.0 || d.temperature > 1.0) ++out.out_of_range_test_values;
            }
        }
    }
    return out;
}

}  // namespace

CorrosionDataset normalize(const CorrosionDataset& dataset) {
    if (dataset.normalized) throw std::invalid_argument("dataset is already normalized");
    std::vector<ZoneNormalization> params;
    for (const auto& split : dataset.split) {
        ZoneNormalization z;
        z.zone = split.zone;
        bool first = true;
        for (int id : split.train_ids) {
            const auto& s = dataset.sample_at(split.zone, id);
            for (const auto& d : s.days) {
                if (first) {
                    z.humidity_min = z.humidity_max = d.humidity;
                    z.temperature_min = z.temperature_max = d.temperature;
                    first = false;
                } else {
                    z.humidity_min = std::min(z.humidity_min, d.humidity);
                    z.humidity_max = std::max(z.humidity_max, d.humidity);
                    z.temperature_min = std::min(z.temperature_min, d.temperature);
                    z.temperature_max = std::max(z.temperature_max, d.temperature);
                }
            }
        }
        if (!(z.humidity_max > z.humidity_min)) {
            throw std::runtime_error("zone " + std::to_string(split.zone) +
                                     ": humidity channel is constant over the training samples");
        }
        if (!(z.temperature_max > z.temperature_min)) {
            throw std::runtime_error("zone " + std::to_string(split.zone) +
                                     ": temperature channel is constant over the training samples");
        }
        params.push_back(z);
    }
    return normalize_with(dataset, params);
}

CorrosionDataset apply_normalization(const CorrosionDataset& dataset,
                                     const std::vector<ZoneNormalization>& params) {
    if (dataset.normalized) throw std::invalid_argument("dataset is already normalized");
    return normalize_with(dataset, params);
}

std::array<ZoneSynthParams, 4> default_zone_params() {
    std::array<ZoneSynthParams, 4> p{};
    p[0] = {0.55, 0.30, 55.0, 12.0, 5.5, 22.0, 3.5, 7.0, 0.08, 0.010};
    p[1] = {0.95, 0.50, 68.0, 10.0, 4.0, 28.0, 4.0, 5.0, 0.08, 0.010};
    p[2] = {1.50, 0.72, 78.0, 8.0, 3.0, 33.0, 5.0, 4.5, 0.08, 0.012};
    p[3] = {2.30, 0.92, 88.0, 6.0, 2.5, 38.0, 6.0, 3.5, 0.08, 0.012};
    return p;
}

CorrosionDataset synth_generate(std::uint64_t seed, const std::array<ZoneSynthParams, 4>& params) {
    for (std::size_t z = 0; z < params.size(); ++z) {
        const auto& p = params[z];
        if (!(p.saturation > 0.0) || p.saturation > 1.0) {
            throw std::invalid_argument("synth zone " + std::to_string(z + 1) +
                                        ": saturation must be in (0, 1]");
        }
        if (p.growth_rate < 0.0) {
            throw std::invalid_argument("synth zone " + std::to_string(z + 1) +
                                        ": growth rate must be >= 0");
        }
        if (p.noise_scale < 0.0) {
            throw std::invalid_argument("synth zone " + std::to_string(z + 1) +
                                        ": noise scale must be >= 0");
        }
        if (p.initial_pitting < 0.005 || p.initial_pitting > 0.02) {
            throw std::invalid_argument("synth zone " + std::to_string(z + 1) +
                                        ": initial pitting must be in [0.005, 0.02]");
        }
        if (!(p.humidity_period > 0.0) || !(p.temperature_period > 0.0)) {
            throw std::invalid_argument("synth zone " + std::to_string(z + 1) +
                                        ": cycle periods must be positive");
        }
    }

    CorrosionDataset ds;
    for (int zi = 0; zi < 4; ++zi) {
        const auto& p = params[static_cast<std::size_t>(zi)];
        const int zone = zi + 1;

        // One sensor per climate zone: every sample in the zone shares the
        // same exogenous series.
        Rng zone_rng(derive_seed(seed, static_cast<std::uint64_t>(zi)));
        const double h_phase = zone_rng.uniform(0.0, 2.0 * M_PI);
        const double t_phase = zone_rng.uniform(0.0, 2.0 * M_PI);
        std::vector<double> humidity(kSynthDays), temperature(kSynthDays);
        for (int d = 0; d < kSynthDays; ++d) {
            humidity[d] = p.humidity_mean +
                          p.humidity_amplitude * std::sin(2.0 * M_PI * d / p.humidity_period + h_phase) +
                          0.15 * p.humidity_amplitude * zone_rng.gaussian();
            temperature[d] = p.temperature_mean +
                             p.temperature_amplitude *
                                 std::sin(2.0 * M_PI * d / p.temperature_period + t_phase) +
                             0.15 * p.temperature_amplitude * zone_rng.gaussian();
        }
        const auto [hmin_it, hmax_it] = std::minmax_element(humidity.begin(), humidity.end());
        const double hmin = *hmin_it;
        const double hspan = *hmax_it - hmin;
        std::vector<double> driver(kSynthDays, 0.5);
        if (hspan > 1e-12) {
            for (int d = 0; d < kSynthDays; ++d) driver[d] = (humidity[d] - hmin) / hspan;
        }

        for (int si = 0; si < kSamplesPerZone; ++si) {
            Rng noise_rng(derive_seed(seed, 16 + static_cast<std::uint64_t>(zi) * 64 +
                                                static_cast<std::uint64_t>(si)));
            CorrosionSample s;
            s.zone = zone;
            s.sample = si;
            double pitting = std::clamp(p.initial_pitting * std::exp(p.noise_scale * noise_rng.gaussian()),
                                        0.005, 0.02);
            for (int d = 0; d < kSynthDays; ++d) {
                DayRecord rec;
                rec.day = d;
                rec.pitting = pitting;
                rec.humidity = humidity[d];
                rec.temperature = temperature[d];
                s.days.push_back(rec);
                // Explicit daily logistic step; the noise multiplies the
                // increment, so noiseless trajectories are exactly monotone.
                const double inc = std::max(
                    0.0, p.growth_rate * driver[d] * pitting * (1.0 - pitting / p.saturation));
                pitting = std::min(1.0, pitting + inc * std::exp(p.noise_scale * noise_rng.gaussian()));
            }
            ds.samples.push_back(std::move(s));
        }
    }
    validate_structure(ds);
    return ds;
}

}  // namespace oqrc
