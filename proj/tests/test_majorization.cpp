#include <doctest.h>

#include "helpers.hpp"
#include "micbench/majorization.hpp"

using namespace micbench;
using micbench::testing::cached_sic;
using micbench::testing::near;

namespace {

RealVector vec(std::initializer_list<double> xs) {
    RealVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const double x : xs) v(i++) = x;
    return v;
}

}  // namespace

TEST_CASE("weak majorization hand cases") {
    auto v = weak_majorizes(vec({3, 1, 0}), vec({2, 1, 1}));
    CHECK(v.relation == MajRelation::majorizes);  // equal totals

    v = weak_majorizes(vec({1, 2, 3}), vec({1, 2, 3}));
    CHECK(v.relation == MajRelation::majorizes);
    CHECK(near(v.worst_margin, 0.0, 1e-15));

    v = weak_majorizes(vec({1, 1}), vec({3, 0}));
    CHECK(v.relation == MajRelation::none);
    CHECK(v.worst_index == 0);  // fails at k = 1

    v = weak_majorizes(vec({2, 1}), vec({1, 1}));
    CHECK(v.relation == MajRelation::weakly_majorizes);  // strict total surplus

    CHECK_THROWS_AS(weak_majorizes(vec({1, 2}), vec({1, 2, 3})), LengthMismatch);
}

TEST_CASE("weak log majorization hand cases") {
    auto v = weak_log_majorizes(vec({4, 1}), vec({2, 2}));
    CHECK(v.relation == MajRelation::log_majorizes);  // products 4 >= 2, 4 = 4

    v = weak_log_majorizes(vec({2, 2}), vec({4, 1}));
    CHECK(v.relation == MajRelation::none);

    CHECK_THROWS_AS(weak_log_majorizes(vec({1, -1}), vec({1, 1})), NonPositiveEntry);
    CHECK_THROWS_AS(weak_log_majorizes(vec({1, 0}), vec({1, 1})), NonPositiveEntry);
    // matching zero patterns are stripped in parallel
    CHECK(weak_log_majorizes(vec({2, 0}), vec({1, 0})).relation ==
          MajRelation::weakly_log_majorizes);
}

TEST_CASE("log majorization implies majorization on random positive pairs") {
    Rng rng(13);
    int implications = 0;
    for (int trial = 0; trial < 400; ++trial) {
        RealVector x(4), y(4);
        for (Eigen::Index i = 0; i < 4; ++i) {
            x(i) = std::exp(rng.gaussian());
            y(i) = std::exp(rng.gaussian());
        }
        const auto lv = weak_log_majorizes(x, y);
        if (lv.relation == MajRelation::none) continue;
        ++implications;
        const auto wv = weak_majorizes(x, y);
        CHECK(wv.relation != MajRelation::none);
    }
    CHECK(implications > 20);  // the corpus exercised the implication
}

TEST_CASE("weak majorization transitivity spot checks") {
    Rng rng(29);
    int chains = 0;
    for (int trial = 0; trial < 500; ++trial) {
        RealVector x(3), y(3), z(3);
        for (Eigen::Index i = 0; i < 3; ++i) {
            x(i) = std::abs(rng.gaussian());
            y(i) = std::abs(rng.gaussian());
            z(i) = std::abs(rng.gaussian());
        }
        if (weak_majorizes(x, y).relation == MajRelation::none) continue;
        if (weak_majorizes(y, z).relation == MajRelation::none) continue;
        ++chains;
        CHECK(weak_majorizes(x, z).relation != MajRelation::none);
    }
    CHECK(chains > 10);
}

TEST_CASE("mean chain") {
    const auto c = mean_chain(vec({2.5, 2.5, 2.5}));
    CHECK(near(c.arithmetic, 2.5, 1e-12));
    CHECK(near(c.geometric, 2.5, 1e-12));
    CHECK(near(c.harmonic, 2.5, 1e-12));

    const auto h = mean_chain(vec({1, 4}));
    CHECK(near(h.arithmetic, 2.5, 1e-12));
    CHECK(near(h.geometric, 2.0, 1e-12));
    CHECK(near(h.harmonic, 1.6, 1e-12));

    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        RealVector x(5);
        for (Eigen::Index i = 0; i < 5; ++i) x(i) = std::exp(rng.gaussian());
        const auto m = mean_chain(x);
        CHECK(m.arithmetic >= m.geometric - 1e-12);
        CHECK(m.geometric >= m.harmonic - 1e-12);
    }

    CHECK_THROWS_AS(mean_chain(vec({1, 0})), NonPositiveEntry);
}

TEST_CASE("singular values of the closed-form Phi matrices") {
    // oracle: Phi_SIC is symmetric, so singular values are |eigenvalues|
    const RealMatrix ps = phi_sic(2).matrix();
    const RealVector ev = symmetric_eigenvalues_desc(ps);
    const SortedVector sv = singular_values(ps);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(near(sv[i], std::abs(ev(i)), 1e-12));
    CHECK(near(sv[0], 3.0, 1e-12));
    CHECK(near(sv[1], 3.0, 1e-12));
    CHECK(near(sv[2], 3.0, 1e-12));
    CHECK(near(sv[3], 1.0, 1e-12));

    const SortedVector si = singular_values(RealMatrix(RealMatrix::Identity(4, 4) - ps));
    CHECK(near(si[0], 2.0, 1e-12));
    CHECK(near(si[1], 2.0, 1e-12));
    CHECK(near(si[2], 2.0, 1e-12));
    CHECK(near(si[3], 0.0, 1e-12));

    const SortedVector sid = singular_values(RealMatrix(RealMatrix::Identity(9, 9)));
    for (Eigen::Index i = 0; i < 9; ++i) CHECK(near(sid[i], 1.0, 1e-14));
}

TEST_CASE("singular value product equals |det|") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        RealMatrix m(4, 4);
        for (Eigen::Index r = 0; r < 4; ++r)
            for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = rng.gaussian();
        const SortedVector s = singular_values(m);
        double prod = 1.0;
        for (Eigen::Index i = 0; i < 4; ++i) prod *= s[i];
        const double target = std::abs(m.determinant());
        CHECK(near(prod, target, 1e-8 * std::max(1.0, target)));
    }
}

TEST_CASE("lemma2: SIC process achieves log-majorization equality") {
    const auto v = lemma2_check(proportional_process(cached_sic(2).mic));
    CHECK(v.relation == MajRelation::log_majorizes);
    CHECK(near(v.worst_margin, 0.0, 1e-9));
}

TEST_CASE("lemma2 holds over a random corpus") {
    for (Eigen::Index d = 2; d <= 3; ++d) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto proc = random_process(
                d, seed % 2 ? MicKind::random_rank1 : MicKind::conjugated_basis,
                seed % 3 == 0 ? PostKind::proportional
                : seed % 3 == 1 ? PostKind::random_pure
                                : PostKind::random_mixed,
                seed);
            CHECK(lemma2_check(proc).relation != MajRelation::none);
        }
    }
}

TEST_CASE("two distinct d=2 SICs give exactly the SIC singular values") {
    const auto& sys = cached_sic(2);
    // second SIC: conjugate every projector by a Haar unitary
    Rng rng(5150);
    const ComplexMatrix u = random_unitary(2, rng);
    std::vector<DensityOperator> posts;
    for (std::size_t i = 0; i < 4; ++i)
        posts.emplace_back(HermitianOperator(
            ComplexMatrix(u * sys.projectors.projector(i).matrix() * u.adjoint())));
    const ReferenceProcess proc(sys.mic, std::move(posts));
    const SortedVector s = singular_values(phi(proc).matrix());
    const SortedVector s_sic = singular_values(phi_sic(2).matrix());
    CHECK((s.entries() - s_sic.entries()).cwiseAbs().maxCoeff() < 1e-8);

    // the modulus has the closed form Phi^-1 (Phi^-1)^T = (d delta + d + 2)/(d (d+1)^2)
    const RealMatrix inv = phi_inverse(proc);
    const RealMatrix mod = inv * inv.transpose();
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) {
            const double expected = ((i == j ? 2.0 : 0.0) + 4.0) / 18.0;
            CHECK(near(mod(i, j), expected, 1e-12));
        }
}

TEST_CASE("zhu majorization") {
    // SIC: equality with lambda_SIC
    const auto& sys = cached_sic(2);
    const auto v = zhu_check(sys.projectors.projectors());
    CHECK(v.relation == MajRelation::majorizes);
    const RealVector spec =
        symmetric_eigenvalues_desc(gram_matrix(sys.projectors.projectors()));
    CHECK((spec - zhu_sic_spectrum(2)).cwiseAbs().maxCoeff() < 1e-10);

    // random normalized rank-1 bases majorize with positive margin
    for (Eigen::Index d = 2; d <= 3; ++d) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Rng rng(seed * 7);
            std::vector<HermitianOperator> pis;
            for (Eigen::Index i = 0; i < d * d; ++i) {
                const ComplexVector x = random_unit_vector(d, rng);
                pis.emplace_back(ComplexMatrix(x * x.adjoint()));
            }
            const auto verdict = zhu_check(pis);
            CHECK(verdict.relation == MajRelation::majorizes);
            // spectrum sums to d^2
            const RealVector s = symmetric_eigenvalues_desc(gram_matrix(pis));
            CHECK(near(s.sum(), double(d * d), 1e-9));
            // equality only at SICs: a random basis stays away from lambda_SIC
            CHECK((s - zhu_sic_spectrum(d)).cwiseAbs().maxCoeff() > 1e-6);
        }
    }

    // normalization gate
    std::vector<HermitianOperator> bad;
    for (int i = 0; i < 4; ++i)
        bad.push_back(identity_operator(2));
    CHECK_THROWS_AS(zhu_check(bad), NotNormalized);
}

TEST_CASE("normalized projector Gram determinant obeys the d^{d^2}/(d+1)^{d^2-1} bound") {
    // det g <= 16/27 at d=2, equality for SICs
    const auto& sys = cached_sic(2);
    const double det_sic = gram_matrix(sys.projectors.projectors()).determinant();
    CHECK(near(det_sic, 16.0 / 27.0, 1e-10));
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<HermitianOperator> pis;
        for (Eigen::Index i = 0; i < 4; ++i) {
            const ComplexVector x = random_unit_vector(2, rng);
            pis.emplace_back(ComplexMatrix(x * x.adjoint()));
        }
        CHECK(gram_matrix(pis).determinant() <= 16.0 / 27.0 + 1e-12);
    }
}

TEST_CASE("frame operator spectrum equals the Gram spectrum") {
    // SIC case: (2, 2/3, 2/3, 2/3)
    const auto& sys = cached_sic(2);
    const SortedVector f = frame_operator_spectrum(sys.projectors.projectors());
    CHECK(near(f[0], 2.0, 1e-10));
    for (Eigen::Index i = 1; i < 4; ++i) CHECK(near(f[i], 2.0 / 3.0, 1e-10));

    // orthonormal Hermitian basis: all ones
    std::vector<HermitianOperator> basis;
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < 2; ++j) {
        ComplexMatrix m = ComplexMatrix::Zero(2, 2);
        m(j, j) = 1.0;
        basis.emplace_back(std::move(m));
    }
    ComplexMatrix re = ComplexMatrix::Zero(2, 2), im = ComplexMatrix::Zero(2, 2);
    re(0, 1) = re(1, 0) = s;
    im(0, 1) = std::complex<double>(0, s);
    im(1, 0) = std::complex<double>(0, -s);
    basis.emplace_back(std::move(re));
    basis.emplace_back(std::move(im));
    const SortedVector fb = frame_operator_spectrum(basis);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(near(fb[i], 1.0, 1e-12));

    // random normalized rank-1 sets: frame and Gram spectra agree
    Rng rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<HermitianOperator> pis;
        for (Eigen::Index i = 0; i < 9; ++i) {
            const ComplexVector x = random_unit_vector(3, rng);
            pis.emplace_back(ComplexMatrix(x * x.adjoint()));
        }
        const SortedVector fs = frame_operator_spectrum(pis);
        const RealVector gs = symmetric_eigenvalues_desc(gram_matrix(pis));
        CHECK((fs.entries() - gs).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("lemma1 reciprocal-eigenvalue bound on proportional processes") {
    for (Eigen::Index d = 2; d <= 3; ++d) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Mic mic = random_mic(
                d, seed % 2 ? MicKind::random_rank1 : MicKind::conjugated_basis, seed);
            const RealMatrix inv = phi_inverse(proportional_process(mic));
            // sum over non-unit eigenvalues of 1/lambda_i(Phi_p) = tr Phi_p^-1 - 1
            CHECK(inv.trace() - 1.0 <= double(d) - 1.0 + 1e-8);
        }
    }
}
