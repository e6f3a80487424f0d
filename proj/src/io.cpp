#include "micbench/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace micbench {

namespace {

Eigen::Index int_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<Eigen::Index>();
}

RealMatrix matrix_field(const Json& j, const char* key, Eigen::Index rows, Eigen::Index cols) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(std::string("missing or non-array field '") + key + "'");
    const Json& a = j[key];
    if (static_cast<Eigen::Index>(a.size()) != rows)
        throw ParseError(std::string("field '") + key + "' has " + std::to_string(a.size()) +
                         " rows, expected " + std::to_string(rows));
    RealMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = a[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError(std::string("field '") + key + "' row " + std::to_string(r) +
                             " must have " + std::to_string(cols) + " entries");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

RealVector vector_field(const Json& j, const char* key, Eigen::Index n) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(std::string("missing or non-array field '") + key + "'");
    const Json& a = j[key];
    if (static_cast<Eigen::Index>(a.size()) != n)
        throw ParseError(std::string("field '") + key + "' has " + std::to_string(a.size()) +
                         " entries, expected " + std::to_string(n));
    RealVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!a[static_cast<std::size_t>(i)].is_number())
            throw ParseError(std::string("non-numeric entry in '") + key + "'");
        v(i) = a[static_cast<std::size_t>(i)].get<double>();
    }
    return v;
}

Json real_matrix_to_json(const RealMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Json operator_to_json(const HermitianOperator& op) {
    Json j;
    j["d"] = op.dim();
    j["re"] = real_matrix_to_json(op.matrix().real());
    j["im"] = real_matrix_to_json(op.matrix().imag());
    return j;
}

HermitianOperator operator_from_json(const Json& j) {
    const Eigen::Index d = int_field(j, "d");
    if (d < 1) throw ParseError("dimension must be positive");
    const RealMatrix re = matrix_field(j, "re", d, d);
    const RealMatrix im = matrix_field(j, "im", d, d);
    ComplexMatrix m(d, d);
    m.real() = re;
    m.imag() = im;
    return HermitianOperator(std::move(m));
}

Json povm_to_json(const Povm& povm) {
    Json j = Json::array();
    for (const auto& e : povm.effects()) j.push_back(operator_to_json(e));
    return j;
}

Povm povm_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("POVM file must be a non-empty array");
    std::vector<HermitianOperator> effects;
    effects.reserve(j.size());
    for (const auto& item : j) effects.push_back(operator_from_json(item));
    return Povm(std::move(effects));
}

Mic mic_from_json(const Json& j) { return Mic(povm_from_json(j)); }

DensityOperator density_from_json(const Json& j) {
    return DensityOperator(operator_from_json(j));
}

Json process_to_json(const ReferenceProcess& proc) {
    Json j;
    j["mic"] = povm_to_json(proc.mic().povm());
    Json posts = Json::array();
    for (const auto& s : proc.post_states()) posts.push_back(operator_to_json(s.op()));
    j["post_states"] = std::move(posts);
    return j;
}

ReferenceProcess process_from_json(const Json& j) {
    if (!j.contains("mic")) throw ParseError("process file needs a 'mic' member");
    Mic mic = mic_from_json(j["mic"]);
    if (!j.contains("post_states") || !j["post_states"].is_array())
        throw ParseError("process file needs a 'post_states' array");
    std::vector<DensityOperator> posts;
    for (const auto& item : j["post_states"]) posts.push_back(density_from_json(item));
    return ReferenceProcess(std::move(mic), std::move(posts));
}

Mic process_mic_from_json(const Json& j) {
    if (!j.contains("mic")) throw ParseError("process file needs a 'mic' member");
    return mic_from_json(j["mic"]);
}

Json fiducial_to_json(const Fiducial& f) {
    Json j;
    j["d"] = f.dim();
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index k = 0; k < f.dim(); ++k) {
        re.push_back(f.amplitudes()(k).real());
        im.push_back(f.amplitudes()(k).imag());
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Fiducial fiducial_from_json(const Json& j) {
    const Eigen::Index d = int_field(j, "d");
    if (d < 1) throw ParseError("dimension must be positive");
    const RealVector re = vector_field(j, "re", d);
    const RealVector im = vector_field(j, "im", d);
    ComplexVector v(d);
    v.real() = re;
    v.imag() = im;
    return Fiducial(std::move(v));
}

EnsembleConfig ensemble_config_from_json(const Json& j) {
    EnsembleConfig cfg;
    try {
        if (j.contains("d")) cfg.d = j["d"].get<Eigen::Index>();
        if (cfg.d < 1) throw ParseError("config: d must be positive");
        if (j.contains("n_samples")) cfg.n_samples = j["n_samples"].get<std::size_t>();
        if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("mic_kind"))
            cfg.mic_kind = mic_kind_from_string(j["mic_kind"].get<std::string>());
        if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
        if (j.contains("post_kind"))
            cfg.post_kind = post_kind_from_string(j["post_kind"].get<std::string>());
        if (j.contains("checks")) {
            if (!j["checks"].is_array()) throw ParseError("config: 'checks' must be an array");
            cfg.checks.clear();
            for (const auto& c : j["checks"])
                cfg.checks.push_back(check_kind_from_string(c.get<std::string>()));
        }
        if (j.contains("theorem1_specs")) {
            if (!j["theorem1_specs"].is_array())
                throw ParseError("config: 'theorem1_specs' must be an array");
            for (const auto& s : j["theorem1_specs"])
                cfg.theorem1_specs.push_back(NormSpec::parse(s.get<std::string>()));
        }
        if (j.contains("cond_max")) cfg.cond_max = j["cond_max"].get<double>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return cfg;
}

Json ensemble_config_to_json(const EnsembleConfig& cfg) {
    Json j;
    j["d"] = cfg.d;
    j["n_samples"] = cfg.n_samples;
    j["master_seed"] = cfg.master_seed;
    j["mic_kind"] = to_string(cfg.mic_kind);
    if (cfg.mic_kind == MicKind::perturbed_sic) j["epsilon"] = cfg.epsilon;
    j["post_kind"] = to_string(cfg.post_kind);
    Json checks = Json::array();
    for (const auto c : cfg.checks) checks.push_back(to_string(c));
    j["checks"] = std::move(checks);
    Json specs = Json::array();
    for (const auto& s : cfg.theorem1_specs) specs.push_back(s.to_string());
    j["theorem1_specs"] = std::move(specs);
    j["cond_max"] = cfg.cond_max;
    return j;
}

Json ensemble_report_to_json(const EnsembleReport& report) {
    Json j;
    j["config"] = ensemble_config_to_json(report.config);
    Json aggs = Json::array();
    for (const auto& a : report.aggregates) {
        Json ja;
        ja["check"] = a.check;
        ja["count"] = a.count;
        ja["violations"] = a.violations;
        ja["errors"] = a.errors;
        if (a.count > 0) {
            ja["min_margin"] = a.min_margin;
            ja["max_margin"] = a.max_margin;
            ja["mean_margin"] = a.mean_margin;
            ja["worst_seed"] = a.worst_seed;
        }
        aggs.push_back(std::move(ja));
    }
    j["checks"] = std::move(aggs);
    j["total_violations"] = report.total_violations;
    j["total_errors"] = report.total_errors;
    return j;
}

std::string ensemble_samples_csv(const EnsembleReport& report) {
    std::ostringstream out;
    const auto& cfg = report.config;
    out << "# micbench ensemble d=" << cfg.d << " n_samples=" << cfg.n_samples
        << " master_seed=" << cfg.master_seed << " mic_kind=" << to_string(cfg.mic_kind);
    if (cfg.mic_kind == MicKind::perturbed_sic) out << " epsilon=" << fmt12(cfg.epsilon);
    out << " post_kind=" << to_string(cfg.post_kind) << " cond_max=" << fmt12(cfg.cond_max)
        << "\n";
    out << "index,seed,check,margin,violation,error\n";
    for (const auto& r : report.samples) {
        std::string err = r.error;
        for (auto& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        out << r.index << ',' << r.seed << ',' << r.check << ',' << fmt12(r.margin) << ','
            << (r.violation ? 1 : 0) << ',' << err << "\n";
    }
    return out.str();
}

void write_ensemble_outputs(const EnsembleReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "report.json", ensemble_report_to_json(report).dump(2) + "\n");
    write_text_file(dir / "samples.csv", ensemble_samples_csv(report));
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string matrix_csv(const RealMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << fmt12(m(r, c));
        }
        out << "\n";
    }
    return out.str();
}

RealVector numbers_from_csv(const std::string& text) {
    std::string normalized = text;
    for (auto& ch : normalized)
        if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream in(normalized);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (!in.eof()) {
        std::string rest;
        in.clear();
        in >> rest;
        throw ParseError("unparseable token '" + rest + "'");
    }
    if (values.empty()) throw ParseError("no numbers found");
    return Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
    }
    return j;
}

std::string load_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << content;
}

}  // namespace micbench
