#include <doctest.h>

#include <limits>

#include "helpers.hpp"
#include "micbench/norms.hpp"

using namespace micbench;
using micbench::testing::cached_sic;
using micbench::testing::near;

TEST_CASE("norm spec parsing and validation") {
    CHECK(NormSpec::parse("schatten:2").kind == NormSpec::Kind::schatten);
    CHECK(NormSpec::parse("schatten:2").p == 2.0);
    CHECK(std::isinf(NormSpec::parse("schatten:inf").p));
    CHECK(NormSpec::parse("kyfan:3").k == 3);
    CHECK_THROWS_AS(NormSpec::parse("schatten:0.5"), InvalidSpec);
    CHECK_THROWS_AS(NormSpec::parse("kyfan:0"), InvalidSpec);
    CHECK_THROWS_AS(NormSpec::parse("nuclear:1"), InvalidSpec);
    CHECK_THROWS_AS(NormSpec::parse("schatten"), InvalidSpec);
    CHECK(NormSpec::parse("schatten:inf").to_string() == "schatten:inf");
    CHECK(NormSpec::parse("kyfan:2").to_string() == "kyfan:2");
}

TEST_CASE("closed-form distances for I - Phi_SIC") {
    const PhiMatrix ps2 = phi_sic(2);
    // s(I - Phi_SIC) = (2, 2, 2, 0)
    CHECK(near(distance_from_identity(ps2, NormSpec::schatten(2.0)), 2.0 * std::sqrt(3.0),
               1e-10));
    CHECK(near(distance_from_identity(ps2, NormSpec::schatten(1.0)), 6.0, 1e-10));
    CHECK(near(distance_from_identity(
                   ps2, NormSpec::schatten(std::numeric_limits<double>::infinity())),
               2.0, 1e-10));
    CHECK(near(distance_from_identity(ps2, NormSpec::ky_fan(1)), 2.0, 1e-10));

    // d = 3 trace norm: d (d^2 - 1) = 24
    CHECK(near(distance_from_identity(phi_sic(3), NormSpec::schatten(1.0)), 24.0, 1e-9));

    // hypothetical Phi = I has distance zero
    const PhiMatrix id(RealMatrix::Identity(4, 4), PhiProvenance::from_process, 1.0);
    CHECK(near(distance_from_identity(id, NormSpec::schatten(2.0)), 0.0, 1e-14));
}

TEST_CASE("unitary invariance under random orthogonal conjugation") {
    Rng rng(314);
    RealMatrix m(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = rng.gaussian();
    // orthogonal factors from QR of Gaussian matrices
    RealMatrix a(4, 4), b(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) {
            a(r, c) = rng.gaussian();
            b(r, c) = rng.gaussian();
        }
    const RealMatrix u = Eigen::HouseholderQR<RealMatrix>(a).householderQ();
    const RealMatrix v = Eigen::HouseholderQR<RealMatrix>(b).householderQ();
    for (const auto& spec : standard_spec_family(4)) {
        const double n0 = ui_norm(m, spec);
        const double n1 = ui_norm(RealMatrix(u * m * v), spec);
        CHECK(near(n0, n1, 1e-9 * std::max(1.0, n0)));
    }
}

TEST_CASE("weak majorization of singular values implies norm monotonicity") {
    Rng rng(271);
    int exercised = 0;
    for (int trial = 0; trial < 200; ++trial) {
        RealMatrix a(3, 3), b(3, 3);
        for (Eigen::Index r = 0; r < 3; ++r)
            for (Eigen::Index c = 0; c < 3; ++c) {
                a(r, c) = rng.gaussian();
                b(r, c) = rng.gaussian();
            }
        const SortedVector sa = singular_values(a);
        const SortedVector sb = singular_values(b);
        if (weak_majorizes(sa.entries(), sb.entries()).relation == MajRelation::none) continue;
        ++exercised;
        for (const auto& spec : standard_spec_family(3))
            CHECK(ui_norm(a, spec) >= ui_norm(b, spec) - 1e-9);
    }
    CHECK(exercised > 10);
}

TEST_CASE("ky fan norms are nondecreasing in k and cap at the trace norm") {
    Rng rng(99);
    RealMatrix m(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = rng.gaussian();
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
        const double v = ui_norm(m, NormSpec::ky_fan(k));
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
    CHECK(near(prev, ui_norm(m, NormSpec::schatten(1.0)), 1e-10));
    CHECK_THROWS_AS(ui_norm(m, NormSpec::ky_fan(5)), InvalidSpec);
}

TEST_CASE("theorem 1: SIC process sits at the minimum") {
    for (Eigen::Index d = 2; d <= 3; ++d) {
        const auto proc = proportional_process(cached_sic(d).mic);
        for (const auto& spec : standard_spec_family(d * d))
            CHECK(near(theorem1_margin(proc, spec), 0.0, 1e-7));
    }
}

TEST_CASE("theorem 1: depolarized post states move strictly away") {
    const auto& sys = cached_sic(2);
    std::vector<DensityOperator> posts;
    for (std::size_t i = 0; i < 4; ++i) {
        const ComplexMatrix blurred = 0.99 * sys.projectors.projector(i).matrix() +
                                      0.01 * ComplexMatrix::Identity(2, 2) / 2.0;
        posts.emplace_back(HermitianOperator(blurred));
    }
    const ReferenceProcess proc(sys.mic, std::move(posts));
    for (const auto& spec : standard_spec_family(4))
        CHECK(theorem1_margin(proc, spec) > 1e-6);
}

TEST_CASE("theorem 1 margins are nonnegative over a random corpus") {
    for (Eigen::Index d = 2; d <= 3; ++d) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto proc = random_process(
                d, seed % 2 ? MicKind::random_rank1 : MicKind::conjugated_basis,
                seed % 3 == 0 ? PostKind::proportional
                : seed % 3 == 1 ? PostKind::random_pure
                                : PostKind::random_mixed,
                seed);
            const PhiMatrix pm = phi(proc);
            for (const auto& spec : standard_spec_family(d * d))
                CHECK(theorem1_margin(pm, spec) >= -1e-8);
        }
    }
}
