#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "micbench/born.hpp"
#include "micbench/norms.hpp"
#include "micbench/process.hpp"
#include "micbench/rng.hpp"

namespace micbench {

enum class MicKind { random_rank1, conjugated_basis, perturbed_sic };
enum class PostKind { proportional, random_pure, random_mixed };
enum class CheckKind { lemma1, lemma2, theorem1, zhu, born_equiv, negativity };

const char* to_string(MicKind k);
const char* to_string(PostKind k);
const char* to_string(CheckKind k);
MicKind mic_kind_from_string(const std::string& s);
PostKind post_kind_from_string(const std::string& s);
CheckKind check_kind_from_string(const std::string& s);

struct EnsembleConfig {
    Eigen::Index d = 2;
    std::size_t n_samples = 1;
    std::uint64_t master_seed = 0;
    MicKind mic_kind = MicKind::random_rank1;
    double epsilon = 0.1;  // mixing weight for perturbed_sic, in (0, 1)
    PostKind post_kind = PostKind::proportional;
    std::vector<CheckKind> checks = {CheckKind::lemma1,    CheckKind::lemma2,
                                     CheckKind::theorem1,  CheckKind::zhu,
                                     CheckKind::born_equiv, CheckKind::negativity};
    std::vector<NormSpec> theorem1_specs;  // empty: standard family for d^2
    double cond_max = tol::cond_max;
    int threads = 0;  // 0: all hardware threads; output is independent of this
};

// One CSV row: a single check evaluated on a single sample.
struct SampleRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string check;
    double margin = 0.0;
    bool violation = false;
    std::string error;
};

struct CheckAggregate {
    std::string check;
    std::size_t count = 0;       // successfully evaluated samples
    std::size_t violations = 0;
    std::size_t errors = 0;      // excluded from the margins
    double min_margin = 0.0;
    double max_margin = 0.0;
    double mean_margin = 0.0;
    std::uint64_t worst_seed = 0;  // seed attaining min_margin
};

struct EnsembleReport {
    EnsembleConfig config;
    std::vector<SampleRecord> samples;      // ordered by (index, check)
    std::vector<CheckAggregate> aggregates;
    std::size_t total_violations = 0;
    std::size_t total_errors = 0;
    double runtime_seconds = 0.0;  // informational; never serialized
};

// Unit-trace state from a seeded complex Gaussian d x rank factor.
DensityOperator random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed);

// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Eigen::Index d, Rng& rng);

// All kinds are renormalized through S^{-1/2} ( . ) S^{-1/2} with S the raw
// effect sum, and retried (up to 32 times) until check_mic passes.
Mic random_mic(Eigen::Index d, MicKind kind, std::uint64_t seed, double epsilon = 0.1);

// n_outcomes Wishart effects, normalized like random_mic.
Povm random_povm(Eigen::Index d, std::size_t n_outcomes, Eigen::Index rank, std::uint64_t seed);

ReferenceProcess random_process(Eigen::Index d, MicKind mic_kind, PostKind post_kind,
                                std::uint64_t seed, double epsilon = 0.1);

// Runs every enabled check on n_samples independently seeded samples.
// Reports are reproducible bit-for-bit for a given config, regardless of
// thread count: sample i depends only on mix_seed(master_seed, i) and
// results are collected by index. The second overload also writes
// report.json and samples.csv into out_dir.
EnsembleReport run_ensemble(const EnsembleConfig& config);
EnsembleReport run_ensemble(const EnsembleConfig& config, const std::string& out_dir);

}  // namespace micbench
