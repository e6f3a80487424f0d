#include "micbench/sampling.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "micbench/geometry.hpp"
#include "micbench/io.hpp"
#include "micbench/majorization.hpp"
#include "micbench/sic.hpp"

namespace micbench {

const char* to_string(MicKind k) {
    switch (k) {
        case MicKind::random_rank1: return "random_rank1";
        case MicKind::conjugated_basis: return "conjugated_basis";
        case MicKind::perturbed_sic: return "perturbed_sic";
    }
    return "random_rank1";
}

const char* to_string(PostKind k) {
    switch (k) {
        case PostKind::proportional: return "proportional";
        case PostKind::random_pure: return "random_pure";
        case PostKind::random_mixed: return "random_mixed";
    }
    return "proportional";
}

const char* to_string(CheckKind k) {
    switch (k) {
        case CheckKind::lemma1: return "lemma1";
        case CheckKind::lemma2: return "lemma2";
        case CheckKind::theorem1: return "theorem1";
        case CheckKind::zhu: return "zhu";
        case CheckKind::born_equiv: return "born_equiv";
        case CheckKind::negativity: return "negativity";
    }
    return "lemma1";
}

MicKind mic_kind_from_string(const std::string& s) {
    if (s == "random_rank1") return MicKind::random_rank1;
    if (s == "conjugated_basis") return MicKind::conjugated_basis;
    if (s == "perturbed_sic") return MicKind::perturbed_sic;
    throw InvalidSpec("unknown mic_kind '" + s + "'");
}

PostKind post_kind_from_string(const std::string& s) {
    if (s == "proportional") return PostKind::proportional;
    if (s == "random_pure") return PostKind::random_pure;
    if (s == "random_mixed") return PostKind::random_mixed;
    throw InvalidSpec("unknown post_kind '" + s + "'");
}

CheckKind check_kind_from_string(const std::string& s) {
    if (s == "lemma1") return CheckKind::lemma1;
    if (s == "lemma2") return CheckKind::lemma2;
    if (s == "theorem1") return CheckKind::theorem1;
    if (s == "zhu") return CheckKind::zhu;
    if (s == "born_equiv") return CheckKind::born_equiv;
    if (s == "negativity") return CheckKind::negativity;
    throw InvalidSpec("unknown check '" + s + "'");
}

DensityOperator random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed) {
    if (rank < 1 || rank > d)
        throw InvalidRank("rank must lie in [1, d], got " + std::to_string(rank));
    Rng rng(seed);
    ComplexMatrix g(d, rank);
    for (Eigen::Index j = 0; j < rank; ++j)
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.complex_gaussian();
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(HermitianOperator(std::move(rho)));
}

ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) {
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the phase ambiguity so the distribution is Haar
    for (Eigen::Index j = 0; j < d; ++j) {
        const std::complex<double> rjj = r(j, j);
        q.col(j) *= std::abs(rjj) > 0.0 ? rjj / std::abs(rjj) : 1.0;
    }
    return q;
}

namespace {

// raw effects -> S^{-1/2} E_i S^{-1/2}; empty result when S is too singular
std::optional<std::vector<HermitianOperator>> normalize_effects(
    const std::vector<ComplexMatrix>& raw) {
    const Eigen::Index d = raw.front().rows();
    ComplexMatrix s = ComplexMatrix::Zero(d, d);
    for (const auto& e : raw) s += e;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    if (es.eigenvalues().minCoeff() < 1e-10) return std::nullopt;
    const ComplexMatrix t = es.operatorInverseSqrt();
    std::vector<HermitianOperator> out;
    out.reserve(raw.size());
    for (const auto& e : raw) out.emplace_back(ComplexMatrix(t * e * t));
    return out;
}

// Hermitian basis: projectors |j><j|, then real and imaginary off-diagonal
// pairs, scaled to unit Hilbert-Schmidt norm.
std::vector<ComplexMatrix> hermitian_basis(Eigen::Index d) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d * d));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < d; ++j) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        m(j, j) = 1.0;
        basis.push_back(std::move(m));
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
            ComplexMatrix re = ComplexMatrix::Zero(d, d);
            re(j, k) = inv_sqrt2;
            re(k, j) = inv_sqrt2;
            basis.push_back(std::move(re));
            ComplexMatrix im = ComplexMatrix::Zero(d, d);
            im(j, k) = std::complex<double>(0.0, inv_sqrt2);
            im(k, j) = std::complex<double>(0.0, -inv_sqrt2);
            basis.push_back(std::move(im));
        }
    }
    return basis;
}

std::optional<Mic> try_random_mic(Eigen::Index d, MicKind kind, std::uint64_t seed,
                                  double epsilon) {
    Rng rng(seed);
    std::vector<ComplexMatrix> raw;
    raw.reserve(static_cast<std::size_t>(d * d));

    switch (kind) {
        case MicKind::random_rank1: {
            for (Eigen::Index i = 0; i < d * d; ++i) {
                const ComplexVector v = random_unit_vector(d, rng);
                raw.emplace_back(v * v.adjoint());
            }
            break;
        }
        case MicKind::conjugated_basis: {
            const ComplexMatrix u = random_unitary(d, rng);
            for (const auto& b : hermitian_basis(d)) {
                ComplexMatrix c = u * b * u.adjoint();
                Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c, Eigen::EigenvaluesOnly);
                const double shift = std::max(0.0, -es.eigenvalues().minCoeff()) + 0.1;
                c += shift * ComplexMatrix::Identity(d, d);
                raw.push_back(std::move(c));
            }
            break;
        }
        case MicKind::perturbed_sic: {
            if (!(epsilon > 0.0 && epsilon < 1.0))
                throw InvalidSpec("perturbed_sic needs epsilon in (0, 1)");
            const Mic sic = sic_from_fiducial(known_fiducial(d)).mic;
            const Mic noise = random_mic(d, MicKind::random_rank1, rng.bits());
            for (std::size_t i = 0; i < sic.size(); ++i)
                raw.emplace_back((1.0 - epsilon) * sic.effect(i).matrix() +
                                 epsilon * noise.effect(i).matrix());
            break;
        }
    }

    auto effects = normalize_effects(raw);
    if (!effects) return std::nullopt;
    Povm povm(std::move(*effects));
    if (!check_mic(povm).is_mic) return std::nullopt;
    return Mic(std::move(povm));
}

}  // namespace

Mic random_mic(Eigen::Index d, MicKind kind, std::uint64_t seed, double epsilon) {
    for (std::uint64_t retry = 0; retry < 32; ++retry) {
        auto mic = try_random_mic(d, kind, mix_seed(seed, retry), epsilon);
        if (mic) return std::move(*mic);
    }
    throw GenerationFailed(std::string("random_mic(") + to_string(kind) + ") failed after 32 retries");
}

Povm random_povm(Eigen::Index d, std::size_t n_outcomes, Eigen::Index rank,
                 std::uint64_t seed) {
    if (n_outcomes < 1) throw ShapeMismatch("POVM needs at least one outcome");
    if (rank < 1 || rank > d) throw InvalidRank("rank must lie in [1, d]");
    for (std::uint64_t retry = 0; retry < 32; ++retry) {
        Rng rng(mix_seed(seed, retry));
        std::vector<ComplexMatrix> raw;
        raw.reserve(n_outcomes);
        for (std::size_t i = 0; i < n_outcomes; ++i) {
            ComplexMatrix g(d, rank);
            for (Eigen::Index c = 0; c < rank; ++c)
                for (Eigen::Index r = 0; r < d; ++r) g(r, c) = rng.complex_gaussian();
            raw.emplace_back(g * g.adjoint());
        }
        auto effects = normalize_effects(raw);
        if (effects) return Povm(std::move(*effects));
    }
    throw GenerationFailed("random_povm failed after 32 retries");
}

namespace {

// One draw of a process plus its Phi; throws when the posts come out
// dependent or the resulting Phi is too ill-conditioned to represent.
std::pair<ReferenceProcess, PhiMatrix> draw_process(Eigen::Index d, MicKind mic_kind,
                                                    PostKind post_kind, std::uint64_t seed,
                                                    double epsilon, double cond_max) {
    Mic mic = random_mic(d, mic_kind, mix_seed(seed, 0), epsilon);
    ReferenceProcess proc = [&] {
        if (post_kind == PostKind::proportional) return proportional_process(mic);
        const Eigen::Index rank = post_kind == PostKind::random_pure ? 1 : d;
        std::vector<DensityOperator> posts;
        posts.reserve(mic.size());
        for (std::size_t i = 0; i < mic.size(); ++i)
            posts.push_back(random_density(d, rank, mix_seed(seed, 1 + i)));
        return ReferenceProcess(std::move(mic), std::move(posts));
    }();
    PhiMatrix pm = phi(proc, cond_max);
    return {std::move(proc), std::move(pm)};
}

}  // namespace

ReferenceProcess random_process(Eigen::Index d, MicKind mic_kind, PostKind post_kind,
                                std::uint64_t seed, double epsilon) {
    // the random-process corpus is defined as processes whose Phi is
    // computable at the default conditioning ceiling; degenerate draws are
    // replaced by the next sub-seeded attempt
    for (std::uint64_t retry = 0; retry < 32; ++retry) {
        try {
            return draw_process(d, mic_kind, post_kind, mix_seed(seed, 7000 + retry), epsilon,
                                tol::cond_max)
                .first;
        } catch (const IllConditioned&) {
        } catch (const InvariantViolation&) {
        }
    }
    throw GenerationFailed("random_process: no well-posed process after 32 retries");
}

namespace {

double nan_margin() { return std::numeric_limits<double>::quiet_NaN(); }

// All checks for one sample. Every random draw derives from `seed` alone.
std::vector<SampleRecord> evaluate_sample(const EnsembleConfig& cfg, std::size_t index,
                                          std::uint64_t seed) {
    std::vector<SampleRecord> out;
    const auto enabled = [&](CheckKind k) {
        return std::find(cfg.checks.begin(), cfg.checks.end(), k) != cfg.checks.end();
    };
    const auto emit = [&](const std::string& check, double margin, bool violation,
                          const std::string& error = {}) {
        out.push_back(SampleRecord{index, seed, check, margin, violation, error});
    };

    const bool needs_process = enabled(CheckKind::lemma2) || enabled(CheckKind::theorem1) ||
                               enabled(CheckKind::born_equiv) || enabled(CheckKind::negativity);
    const bool needs_mic = needs_process || enabled(CheckKind::lemma1);

    std::optional<Mic> mic;
    std::optional<ReferenceProcess> proc;
    std::optional<PhiMatrix> phi_m;
    std::string setup_error;
    try {
        if (needs_process) {
            // degenerate draws (dependent posts, unrepresentable Phi) are
            // replaced by the next sub-seeded attempt; the corpus is defined
            // as well-posed processes
            for (std::uint64_t retry = 0; retry < 32 && !proc; ++retry) {
                try {
                    auto [p, pm] = draw_process(cfg.d, cfg.mic_kind, cfg.post_kind,
                                                mix_seed(seed, 101 + retry), cfg.epsilon,
                                                cfg.cond_max);
                    proc = std::move(p);
                    phi_m = std::move(pm);
                } catch (const IllConditioned&) {
                } catch (const InvariantViolation&) {
                }
            }
            if (!proc) throw GenerationFailed("no well-posed process after 32 retries");
            mic = proc->mic();
        } else if (needs_mic) {
            mic = random_mic(cfg.d, cfg.mic_kind, mix_seed(seed, 101), cfg.epsilon);
        }
    } catch (const Error& e) {
        setup_error = e.what();
    }

    const double dd = static_cast<double>(cfg.d);
    const double det_sic = std::pow(dd + 1.0, static_cast<double>(cfg.d * cfg.d - 1));

    if (enabled(CheckKind::lemma1)) {
        if (!mic) {
            emit("lemma1_det", nan_margin(), false, setup_error);
            emit("lemma1_recip", nan_margin(), false, setup_error);
        } else {
            try {
                const double m = lemma1_margin(*mic);
                emit("lemma1_det", m, m < -1e-8 * det_sic);
                const double r = lemma1_reciprocal_margin(*mic);
                emit("lemma1_recip", r, r < -1e-8);
            } catch (const Error& e) {
                emit("lemma1_det", nan_margin(), false, e.what());
                emit("lemma1_recip", nan_margin(), false, e.what());
            }
        }
    }

    if (enabled(CheckKind::lemma2)) {
        if (!phi_m) {
            emit("lemma2", nan_margin(), false, setup_error);
        } else {
            try {
                const auto v = weak_log_majorizes(
                    singular_values(phi_m->matrix()).entries(),
                    singular_values(phi_sic(cfg.d).matrix()).entries());
                emit("lemma2", v.worst_margin, v.relation == MajRelation::none);
            } catch (const Error& e) {
                emit("lemma2", nan_margin(), false, e.what());
            }
        }
    }

    if (enabled(CheckKind::theorem1)) {
        const std::vector<NormSpec> specs =
            cfg.theorem1_specs.empty() ? standard_spec_family(cfg.d * cfg.d)
                                       : cfg.theorem1_specs;
        if (!phi_m) {
            for (const auto& spec : specs)
                emit(std::string("theorem1:") + spec.to_string(), nan_margin(), false,
                     setup_error);
        } else {
            try {
                const std::vector<double> margins = theorem1_margins(*phi_m, specs);
                for (std::size_t k = 0; k < specs.size(); ++k)
                    emit(std::string("theorem1:") + specs[k].to_string(), margins[k],
                         margins[k] < -1e-8);
            } catch (const Error& e) {
                for (const auto& spec : specs)
                    emit(std::string("theorem1:") + spec.to_string(), nan_margin(), false,
                         e.what());
            }
        }
    }

    if (enabled(CheckKind::zhu)) {
        try {
            // the Zhu suite draws its own normalized rank-1 basis
            std::vector<HermitianOperator> projectors;
            for (std::uint64_t retry = 0; retry < 32 && projectors.empty(); ++retry) {
                std::vector<HermitianOperator> cand;
                Rng rng(mix_seed(seed, 301 + retry));
                for (Eigen::Index i = 0; i < cfg.d * cfg.d; ++i) {
                    const ComplexVector v = random_unit_vector(cfg.d, rng);
                    cand.emplace_back(ComplexMatrix(v * v.adjoint()));
                }
                const RealVector ev = symmetric_eigenvalues_desc(gram_matrix(cand));
                if (ev(ev.size() - 1) > tol::rank) projectors = std::move(cand);
            }
            if (projectors.empty()) throw GenerationFailed("rank-1 basis stayed dependent");
            const auto v = zhu_check(projectors);
            emit("zhu", v.worst_margin, v.relation == MajRelation::none);
        } catch (const Error& e) {
            emit("zhu", nan_margin(), false, e.what());
        }
    }

    if (enabled(CheckKind::born_equiv)) {
        if (!phi_m) {
            emit("born_equiv", nan_margin(), false, setup_error);
        } else {
            try {
                const Eigen::Index rank = 1 + static_cast<Eigen::Index>(index % cfg.d);
                const DensityOperator rho = random_density(cfg.d, rank, mix_seed(seed, 401));
                const Povm povm = random_povm(cfg.d, static_cast<std::size_t>(cfg.d) + 2, 1,
                                              mix_seed(seed, 402));
                const ProbVector p_ref = born_probabilities(rho, proc->mic().povm());
                const ConditionalMatrix cond = conditional_matrix(povm, *proc);
                const ProbVector q = q_via_phi(p_ref, cond, *phi_m);
                const ProbVector q_direct = born_probabilities(rho, povm);
                const double gap =
                    (q.entries() - q_direct.entries()).cwiseAbs().maxCoeff();
                emit("born_equiv", 1e-9 - gap, gap > 1e-9);
            } catch (const Error& e) {
                emit("born_equiv", nan_margin(), false, e.what());
            }
        }
    }

    if (enabled(CheckKind::negativity)) {
        if (!phi_m) {
            emit("negativity", nan_margin(), false, setup_error);
        } else {
            try {
                double best = 0.0;
                Rng rng(mix_seed(seed, 501));
                for (int trial = 0; trial < 128 && best <= 1e-6; ++trial) {
                    const ComplexVector v = random_unit_vector(cfg.d, rng);
                    DensityOperator rho(HermitianOperator(ComplexMatrix(v * v.adjoint())));
                    const ProbVector p = born_probabilities(rho, proc->mic().povm());
                    best = std::max(best, negativity(quasi_image(p, *phi_m)));
                }
                if (best <= 1e-12) {
                    // deterministic witness: [Phi p(rho)]_i = tr(A_i rho) with
                    // A_i = sum_k Phi_ik H_k, so the minimizing eigenvector of
                    // any A_i with a negative eigenvalue leaves the simplex
                    const Eigen::Index n = cfg.d * cfg.d;
                    for (Eigen::Index i = 0; i < n && best <= 1e-12; ++i) {
                        ComplexMatrix a = ComplexMatrix::Zero(cfg.d, cfg.d);
                        for (Eigen::Index k = 0; k < n; ++k)
                            a += phi_m->matrix()(i, k) *
                                 proc->mic().effect(static_cast<std::size_t>(k)).matrix();
                        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
                        if (es.eigenvalues()(0) >= 0.0) continue;
                        const ComplexVector v = es.eigenvectors().col(0);
                        DensityOperator rho(HermitianOperator(ComplexMatrix(v * v.adjoint())));
                        const ProbVector p = born_probabilities(rho, proc->mic().povm());
                        best = std::max(best, negativity(quasi_image(p, *phi_m)));
                    }
                }
                emit("negativity", best, best <= 1e-12);
            } catch (const Error& e) {
                emit("negativity", nan_margin(), false, e.what());
            }
        }
    }

    return out;
}

}  // namespace

EnsembleReport run_ensemble(const EnsembleConfig& cfg) {
    if (cfg.n_samples < 1) throw InvalidSpec("n_samples must be >= 1");
    if (cfg.mic_kind == MicKind::perturbed_sic && !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw InvalidSpec("perturbed_sic needs epsilon in (0, 1)");

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<std::vector<SampleRecord>> per_sample(cfg.n_samples);
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cfg.n_samples));

    const auto worker = [&](unsigned t) {
        for (std::size_t i = t; i < cfg.n_samples; i += n_threads)
            per_sample[i] = evaluate_sample(cfg, i, mix_seed(cfg.master_seed, i));
    };
    if (n_threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    EnsembleReport report;
    report.config = cfg;

    // aggregate in index order so results do not depend on scheduling
    std::vector<std::string> order;
    std::map<std::string, CheckAggregate> agg;
    for (auto& rows : per_sample) {
        for (auto& r : rows) {
            auto [it, inserted] = agg.try_emplace(r.check);
            CheckAggregate& a = it->second;
            if (inserted) {
                a.check = r.check;
                order.push_back(r.check);
            }
            if (!r.error.empty() || std::isnan(r.margin)) {
                ++a.errors;
            } else {
                if (a.count == 0 || r.margin < a.min_margin) {
                    a.min_margin = r.margin;
                    a.worst_seed = r.seed;
                }
                if (a.count == 0 || r.margin > a.max_margin) a.max_margin = r.margin;
                a.mean_margin += r.margin;
                ++a.count;
                if (r.violation) ++a.violations;
            }
            report.samples.push_back(std::move(r));
        }
    }
    for (const auto& name : order) {
        CheckAggregate a = agg[name];
        if (a.count > 0) a.mean_margin /= static_cast<double>(a.count);
        report.total_violations += a.violations;
        report.total_errors += a.errors;
        report.aggregates.push_back(std::move(a));
    }

    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

EnsembleReport run_ensemble(const EnsembleConfig& cfg, const std::string& out_dir) {
    EnsembleReport report = run_ensemble(cfg);
    write_ensemble_outputs(report, out_dir);
    return report;
}

}  // namespace micbench
