// SPDX-License-Identifier: MIT
#include "edetect/io.hpp"

#include "edetect/errors.hpp"
#include "edetect/numeric.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace edetect {

namespace {

constexpr const char* kMagic = "edetect-calibration v1";

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    return out;
}

void put(std::ofstream& out, const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
}

void put_real(std::ofstream& out, const std::string& key, double value) {
    put(out, key, format_real(value));
}

void put_array(std::ofstream& out, const std::string& key, const std::vector<double>& values) {
    out << key << " =";
    for (double v : values) out << ' ' << format_real(v);
    out << "\n";
}

const char* family_name(Family f) {
    return f == Family::bernoulli ? "bernoulli" : "sub_exponential";
}

Family family_from(const std::string& name) {
    if (name == "bernoulli") return Family::bernoulli;
    if (name == "sub_exponential") return Family::sub_exponential;
    throw io_error("unknown psi family '" + name + "'");
}

void write_core_fields(std::ofstream& out, const MixtureCalibration& cal) {
    put(out, "family", family_name(cal.family));
    put_real(out, "family_param", cal.family_param);
    put_real(out, "alpha", cal.alpha);
    put_real(out, "delta_lower", cal.delta_lower);
    put_real(out, "delta_upper", cal.delta_upper);
    put(out, "single_baseline", cal.single_baseline ? "1" : "0");
    put_real(out, "g_alpha", cal.g_alpha);
    put(out, "k_alpha", std::to_string(cal.k_alpha));
    put_real(out, "eta_alpha", cal.eta_alpha);
    put_real(out, "weight_mass", cal.weight_mass);
    put_array(out, "lambdas", cal.lambdas);
    put_array(out, "omegas", cal.omegas);
}

class KvFile {
public:
    explicit KvFile(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open " + path.string());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                header_ = line;
                continue;
            }
            std::string key = line.substr(0, eq);
            std::string value = line.substr(eq + 1);
            trim(key);
            trim(value);
            kv_[key] = value;
        }
    }

    const std::string& header() const { return header_; }

    const std::string& str(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw io_error("missing key '" + key + "' in calibration file");
        return it->second;
    }

    double real(const std::string& key) const { return parse_real(str(key), key); }

    int integer(const std::string& key) const {
        try {
            return static_cast<int>(std::stol(str(key)));
        } catch (const std::exception&) {
            throw io_error("bad integer value for key '" + key + "'");
        }
    }

    bool boolean(const std::string& key) const { return str(key) == "1"; }

    std::vector<double> array(const std::string& key) const {
        std::istringstream ss(str(key));
        std::vector<double> out;
        std::string tok;
        while (ss >> tok) out.push_back(parse_real(tok, key));
        return out;
    }

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

private:
    static void trim(std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    }

    static double parse_real(const std::string& tok, const std::string& key) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw io_error("bad numeric value '" + tok + "' for key '" + key + "'");
        }
    }

    std::string header_;
    std::map<std::string, std::string> kv_;
};

MixtureCalibration read_core_fields(const KvFile& f) {
    MixtureCalibration cal;
    cal.family = family_from(f.str("family"));
    cal.family_param = f.real("family_param");
    cal.alpha = f.real("alpha");
    cal.delta_lower = f.real("delta_lower");
    cal.delta_upper = f.real("delta_upper");
    cal.single_baseline = f.boolean("single_baseline");
    cal.g_alpha = f.real("g_alpha");
    cal.k_alpha = f.integer("k_alpha");
    cal.eta_alpha = f.real("eta_alpha");
    cal.weight_mass = f.real("weight_mass");
    cal.lambdas = f.array("lambdas");
    cal.omegas = f.array("omegas");
    if (cal.lambdas.size() != cal.omegas.size())
        throw io_error("lambdas/omegas length mismatch in calibration file");
    return cal;
}

} // namespace

void write_calibration(const std::filesystem::path& path, const MixtureCalibration& cal) {
    auto out = open_out(path);
    out << kMagic << "\n";
    put(out, "type", "finite");
    write_core_fields(out, cal);
    if (!out) throw io_error("failed writing " + path.string());
}

void write_calibration(const std::filesystem::path& path, const AdaptiveCalibration& cal) {
    auto out = open_out(path);
    out << kMagic << "\n";
    put(out, "type", "adaptive");
    write_core_fields(out, cal.core);
    put_real(out, "overall_alpha", cal.alpha);
    put_real(out, "importance_r", cal.importance_r);
    put_real(out, "zeta_s", cal.zeta_s);
    put_real(out, "schedule_density", cal.schedule_density);
    put_real(out, "delta0", cal.delta0);
    put_real(out, "d0", cal.d0);
    put_real(out, "v0", cal.v0);
    put_array(out, "rescaled_omegas", cal.omegas);
    put(out, "zeta_precision_warning", cal.zeta_precision_warning ? "1" : "0");
    if (!out) throw io_error("failed writing " + path.string());
}

LoadedCalibration read_calibration(const std::filesystem::path& path) {
    KvFile f(path);
    if (f.header() != kMagic)
        throw io_error(path.string() + " is not an edetect calibration file");
    LoadedCalibration loaded;
    const std::string type = f.str("type");
    if (type == "finite") {
        loaded.finite = read_core_fields(f);
    } else if (type == "adaptive") {
        AdaptiveCalibration cal;
        cal.core = read_core_fields(f);
        cal.alpha = f.real("overall_alpha");
        cal.importance_r = f.real("importance_r");
        cal.zeta_s = f.real("zeta_s");
        cal.schedule_density = f.real("schedule_density");
        cal.delta0 = f.real("delta0");
        cal.d0 = f.real("d0");
        cal.v0 = f.real("v0");
        cal.omegas = f.array("rescaled_omegas");
        cal.zeta_precision_warning = f.boolean("zeta_precision_warning");
        loaded.adaptive = std::move(cal);
    } else {
        throw io_error("unknown calibration type '" + type + "'");
    }
    return loaded;
}

void write_run_path_csv(const std::filesystem::path& path, const RunResult& result,
                        double log_threshold) {
    auto out = open_out(path);
    out << "step,log_m_sr,log_m_cs,threshold,stopped\n";
    for (const PathRow& row : result.path) {
        out << row.step << ',' << format_real(row.log_sr) << ',' << format_real(row.log_cusum)
            << ',' << format_real(log_threshold) << ',' << (row.stopped ? 1 : 0) << '\n';
    }
    if (!out) throw io_error("failed writing " + path.string());
}

std::vector<double> ingest_csv(const std::filesystem::path& path, int column,
                               bool has_header,
                               std::optional<std::pair<double, double>> normalize) {
    if (column < 0) throw config_error("column index must be nonnegative");
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());

    std::vector<double> xs;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && has_header) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::string cell;
        int col = 0;
        std::size_t start = 0;
        bool found = false;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string token = line.substr(start, comma == std::string::npos
                                                             ? std::string::npos
                                                             : comma - start);
            if (col == column) {
                cell = token;
                found = true;
                break;
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
            ++col;
        }
        if (!found)
            throw data_error("line " + std::to_string(line_no) + ": no column " +
                             std::to_string(column));
        double value = 0.0;
        const char* begin = cell.data();
        const char* end = begin + cell.size();
        while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
        while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
        const auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc() || res.ptr != end)
            throw data_error("line " + std::to_string(line_no) + ", column " +
                             std::to_string(column) + ": cannot parse '" + cell + "'");
        if (normalize) {
            try {
                value = normalize_bounded(value, normalize->first, normalize->second);
            } catch (const data_error& e) {
                throw data_error("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        xs.push_back(value);
    }
    if (xs.empty()) throw data_error(path.string() + " holds no observations");
    return xs;
}

void write_report(const std::filesystem::path& path, const MonteCarloReport& report,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
    auto out = open_out(path);
    out << "edetect-report monte-carlo\n";
    put(out, "replications", std::to_string(report.replications));
    put_real(out, "mean", report.mean_stat);
    put_real(out, "stderr", report.stderr_stat);
    put(out, "truncation_count", std::to_string(report.truncation_count));
    put(out, "truncation_horizon", std::to_string(report.truncation_horizon));
    for (const auto& [k, v] : extra) put(out, k, v);
    if (!out) throw io_error("failed writing " + path.string());
}

namespace {

const char* regime_name(DelayRegime r) {
    switch (r) {
    case DelayRegime::lorden: return "lorden";
    case DelayRegime::well_separated: return "well_separated";
    case DelayRegime::nosep_high: return "nosep_high";
    case DelayRegime::nosep_mid: return "nosep_mid";
    case DelayRegime::nosep_low: return "nosep_low";
    }
    return "unknown";
}

} // namespace

void write_report(const std::filesystem::path& path, const DelayBoundReport& report,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
    auto out = open_out(path);
    out << "edetect-report delay-bound\n";
    put(out, "regime", regime_name(report.regime));
    put_real(out, "bound", report.bound_value);
    put_real(out, "leading_term", report.leading_term);
    put_real(out, "variance_term", report.variance_term);
    put_real(out, "constant_term", report.constant_term);
    if (report.k_star >= 0) put(out, "k_star", std::to_string(report.k_star));
    for (const auto& [k, v] : extra) put(out, k, v);
    if (!out) throw io_error("failed writing " + path.string());
}

void append_report_csv_row(const std::filesystem::path& path, const std::string& label,
                           const MonteCarloReport& report) {
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream out(path, std::ios::app);
    if (!out) throw io_error("cannot open " + path.string() + " for appending");
    if (fresh) out << "label,replications,mean,stderr,truncation_count,truncation_horizon\n";
    out << label << ',' << report.replications << ',' << format_real(report.mean_stat) << ','
        << format_real(report.stderr_stat) << ',' << report.truncation_count << ','
        << report.truncation_horizon << '\n';
    if (!out) throw io_error("failed writing " + path.string());
}

} // namespace edetect
