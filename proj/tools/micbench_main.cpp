// micbench: construct SICs and MICs, build Phi matrices of reference
// processes, evaluate the Born rule against the law of total probability,
// and run the majorization / norm / volume verification suites.
//
// Exit codes: 0 success, 1 check failed, 2 usage error, 3 numerical error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "micbench/born.hpp"
#include "micbench/geometry.hpp"
#include "micbench/io.hpp"
#include "micbench/majorization.hpp"
#include "micbench/norms.hpp"
#include "micbench/process.hpp"
#include "micbench/sampling.hpp"
#include "micbench/sic.hpp"

namespace {

using namespace micbench;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

void echo_config(const std::string& line) { std::cerr << "config: " << line << "\n"; }

struct SicArgs {
    Eigen::Index d = 2;
    bool search = false;
    std::uint64_t seed = 0;
};

int run_sic(const SicArgs& a) {
    echo_config("subcommand=sic d=" + std::to_string(a.d) +
                " search=" + (a.search ? std::string("true") : std::string("false")) +
                " seed=" + std::to_string(a.seed));
    const Fiducial f = a.search ? find_fiducial(a.d, a.seed) : known_fiducial(a.d);
    const SicSystem sys = sic_from_fiducial(f);
    std::cout << povm_to_json(sys.mic.povm()).dump(2) << "\n";
    return kOk;
}

struct PhiArgs {
    std::string process_path;
    bool proportional = false;
};

int run_phi(const PhiArgs& a) {
    echo_config("subcommand=phi process=" + a.process_path +
                " proportional=" + (a.proportional ? std::string("true") : std::string("false")));
    const Json j = load_json_file(a.process_path);
    const ReferenceProcess proc = a.proportional
                                      ? proportional_process(process_mic_from_json(j))
                                      : process_from_json(j);
    std::cout << matrix_csv(phi(proc).matrix());
    return kOk;
}

struct BornArgs {
    std::string state_path;
    std::string povm_path;
    std::string process_path;
    bool via_phi = false;
};

int run_born(const BornArgs& a) {
    echo_config("subcommand=born state=" + a.state_path + " povm=" + a.povm_path +
                " via_phi=" + (a.via_phi ? std::string("true") : std::string("false")) +
                " process=" + (a.process_path.empty() ? std::string("-") : a.process_path));
    const DensityOperator rho = density_from_json(load_json_file(a.state_path));
    const Povm povm = povm_from_json(load_json_file(a.povm_path));
    const ProbVector q = born_probabilities(rho, povm);

    if (!a.via_phi) {
        std::cout << "outcome,q_operator\n";
        for (Eigen::Index i = 0; i < q.size(); ++i)
            std::cout << i << ',' << fmt12(q[i]) << "\n";
        return kOk;
    }

    if (a.process_path.empty())
        throw InvalidSpec("--via-phi needs --process");
    const ReferenceProcess proc = process_from_json(load_json_file(a.process_path));
    const PhiMatrix pm = phi(proc);
    const ProbVector p_ref = born_probabilities(rho, proc.mic().povm());
    const ConditionalMatrix cond = conditional_matrix(povm, proc);
    const ProbVector q_phi = q_via_phi(p_ref, cond, pm);
    const ProbVector p_ltp = ltp(p_ref, cond);

    std::cout << "outcome,q_operator,q_phi,ltp\n";
    for (Eigen::Index i = 0; i < q.size(); ++i)
        std::cout << i << ',' << fmt12(q[i]) << ',' << fmt12(q_phi[i]) << ','
                  << fmt12(p_ltp[i]) << "\n";

    const double gap_phi = (q.entries() - q_phi.entries()).cwiseAbs().maxCoeff();
    const double gap_ltp = (q.entries() - p_ltp.entries()).cwiseAbs().maxCoeff();
    const double tv_ltp = 0.5 * (q.entries() - p_ltp.entries()).cwiseAbs().sum();
    std::cerr << "max_gap_phi=" << fmt12(gap_phi) << " max_gap_ltp=" << fmt12(gap_ltp)
              << " total_variation_ltp=" << fmt12(tv_ltp) << "\n";
    return kOk;
}

struct MajorizeArgs {
    std::string x_path;
    std::string y_path;
    bool log = false;
    bool weak = false;
};

int run_majorize(const MajorizeArgs& a) {
    echo_config("subcommand=majorize x=" + a.x_path + " y=" + a.y_path +
                " log=" + (a.log ? std::string("true") : std::string("false")) +
                " weak=" + (a.weak ? std::string("true") : std::string("false")));
    const RealVector x = numbers_from_csv(load_text_file(a.x_path));
    const RealVector y = numbers_from_csv(load_text_file(a.y_path));
    const MajorizationVerdict v = a.log ? weak_log_majorizes(x, y) : weak_majorizes(x, y);

    bool holds = false;
    if (a.weak) {
        holds = v.relation != MajRelation::none;
    } else if (a.log) {
        holds = v.relation == MajRelation::log_majorizes;
    } else {
        holds = v.relation == MajRelation::majorizes;
    }
    std::cout << "relation=" << to_string(v.relation)
              << " worst_margin=" << fmt12(v.worst_margin)
              << " worst_index=" << v.worst_index << "\n";
    return holds ? kOk : kCheckFailed;
}

struct DistanceArgs {
    std::string process_path;
    std::string norm = "schatten:2";
};

int run_distance(const DistanceArgs& a) {
    echo_config("subcommand=distance process=" + a.process_path + " norm=" + a.norm);
    const NormSpec spec = NormSpec::parse(a.norm);
    const ReferenceProcess proc = process_from_json(load_json_file(a.process_path));
    const PhiMatrix pm = phi(proc);
    const double dist = distance_from_identity(pm, spec);
    const double dist_sic = distance_from_identity(phi_sic(proc.dim()), spec);
    std::cout << "norm,distance,distance_sic,margin\n";
    std::cout << spec.to_string() << ',' << fmt12(dist) << ',' << fmt12(dist_sic) << ','
              << fmt12(dist - dist_sic) << "\n";
    return kOk;
}

struct VolumeArgs {
    Eigen::Index d = 2;
    std::string table;
};

int run_volume(const VolumeArgs& a) {
    echo_config("subcommand=volume d=" + std::to_string(a.d) +
                " table=" + (a.table.empty() ? std::string("-") : a.table));
    Eigen::Index lo = a.d, hi = a.d;
    if (!a.table.empty()) {
        const auto dots = a.table.find("..");
        if (dots == std::string::npos)
            throw InvalidSpec("--table expects a range like 2..8");
        try {
            lo = std::stoll(a.table.substr(0, dots));
            hi = std::stoll(a.table.substr(dots + 2));
        } catch (const std::logic_error&) {
            throw InvalidSpec("--table expects a range like 2..8");
        }
        if (lo < 2 || hi < lo) throw InvalidSpec("--table range must satisfy 2 <= lo <= hi");
    }
    std::cout << "d,vol_P_sic,vol_simplex,ratio,vol_HS\n";
    for (Eigen::Index d = lo; d <= hi; ++d) {
        const VolumeReport r = volume_report(d);
        std::cout << r.d << ',' << fmt12(r.vol_p_sic) << ',' << fmt12(r.vol_simplex) << ','
                  << fmt12(r.ratio) << ',' << fmt12(r.vol_hs_qd) << "\n";
    }
    return kOk;
}

struct EnsembleArgs {
    std::string config_path;
    std::string out_dir;
    int threads = 0;
    std::int64_t seed = -1;  // overrides master_seed when >= 0
};

int run_ensemble_cmd(const EnsembleArgs& a) {
    EnsembleConfig cfg = ensemble_config_from_json(load_json_file(a.config_path));
    if (a.seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(a.seed);
    if (a.threads > 0) {
        cfg.threads = a.threads;
    } else if (cfg.threads == 0) {
        if (const char* env = std::getenv("MICBENCH_THREADS")) cfg.threads = std::atoi(env);
    }
    echo_config("subcommand=ensemble config=" + a.config_path + " out=" + a.out_dir +
                " d=" + std::to_string(cfg.d) + " n_samples=" + std::to_string(cfg.n_samples) +
                " master_seed=" + std::to_string(cfg.master_seed) +
                " threads=" + std::to_string(cfg.threads));

    const EnsembleReport report = run_ensemble(cfg, a.out_dir);

    std::cerr << "runtime_seconds=" << report.runtime_seconds << "\n";
    for (const auto& agg : report.aggregates) {
        std::cout << agg.check << ": count=" << agg.count << " violations=" << agg.violations
                  << " errors=" << agg.errors;
        if (agg.count > 0)
            std::cout << " min=" << fmt12(agg.min_margin) << " mean=" << fmt12(agg.mean_margin)
                      << " max=" << fmt12(agg.max_margin) << " worst_seed=" << agg.worst_seed;
        std::cout << "\n";
    }
    std::cout << "total_violations=" << report.total_violations
              << " total_errors=" << report.total_errors << "\n";
    return report.total_violations == 0 ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MIC/SIC reference-process workbench"};
    app.require_subcommand(1);

    SicArgs sic_args;
    auto* sic_cmd = app.add_subcommand("sic", "emit a SIC MIC in the operator JSON format");
    sic_cmd->add_option("--d", sic_args.d, "Hilbert-space dimension")->required();
    sic_cmd->add_flag("--search", sic_args.search,
                      "find a fiducial by frame-potential minimization instead of the registry");
    sic_cmd->add_option("--seed", sic_args.seed, "search seed");

    PhiArgs phi_args;
    auto* phi_cmd = app.add_subcommand("phi", "print the Phi matrix of a process as CSV");
    phi_cmd->add_option("--process", phi_args.process_path, "process JSON file")->required();
    phi_cmd->add_flag("--proportional", phi_args.proportional,
                      "use the proportional post states of the file's MIC");

    BornArgs born_args;
    auto* born_cmd = app.add_subcommand("born", "Born-rule probabilities for a state and POVM");
    born_cmd->add_option("--state", born_args.state_path, "state JSON file")->required();
    born_cmd->add_option("--povm", born_args.povm_path, "POVM JSON file")->required();
    born_cmd->add_flag("--via-phi", born_args.via_phi,
                       "also evaluate the Phi-deformed rule and the LTP");
    born_cmd->add_option("--process", born_args.process_path, "reference process JSON file");

    MajorizeArgs maj_args;
    auto* maj_cmd = app.add_subcommand("majorize", "test a majorization relation x > y");
    maj_cmd->add_option("--x", maj_args.x_path, "CSV vector file")->required();
    maj_cmd->add_option("--y", maj_args.y_path, "CSV vector file")->required();
    maj_cmd->add_flag("--log", maj_args.log, "log (multiplicative) majorization");
    maj_cmd->add_flag("--weak", maj_args.weak, "accept the weak relation");

    DistanceArgs dist_args;
    auto* dist_cmd =
        app.add_subcommand("distance", "unitarily invariant distance from the identity");
    dist_cmd->add_option("--process", dist_args.process_path, "process JSON file")->required();
    dist_cmd->add_option("--norm", dist_args.norm, "norm spec: schatten:p|inf or kyfan:k");

    VolumeArgs vol_args;
    auto* vol_cmd = app.add_subcommand("volume", "closed-form state-space volume report");
    vol_cmd->add_option("--d", vol_args.d, "Hilbert-space dimension");
    vol_cmd->add_option("--table", vol_args.table, "dimension range, e.g. 2..8");

    EnsembleArgs ens_args;
    auto* ens_cmd = app.add_subcommand("ensemble", "run seeded verification ensembles");
    ens_cmd->add_option("--config", ens_args.config_path, "EnsembleConfig JSON file")
        ->required();
    ens_cmd->add_option("--out", ens_args.out_dir, "output directory")->required();
    ens_cmd->add_option("--threads", ens_args.threads,
                        "worker threads (default: all cores or MICBENCH_THREADS)");
    ens_cmd->add_option("--seed", ens_args.seed, "override the config's master_seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (sic_cmd->parsed()) return run_sic(sic_args);
        if (phi_cmd->parsed()) return run_phi(phi_args);
        if (born_cmd->parsed()) return run_born(born_args);
        if (maj_cmd->parsed()) return run_majorize(maj_args);
        if (dist_cmd->parsed()) return run_distance(dist_args);
        if (vol_cmd->parsed()) return run_volume(vol_args);
        if (ens_cmd->parsed()) return run_ensemble_cmd(ens_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.category() == Error::Category::input ? kUsage : kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}
