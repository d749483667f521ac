#include <doctest.h>

#include <numbers>
#include <random>

#include "rotforge/density.hpp"
#include "rotforge/gates.hpp"
#include "rotforge/pauli.hpp"

using namespace rotforge;

namespace {

Matrix random_density(int n, std::mt19937_64& rng) {
    const Eigen::Index dim = Eigen::Index(1) << n;
    std::normal_distribution<double> g;
    Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

PauliString random_pauli(int width, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(0, 3);
    std::vector<Pauli> ls(width);
    for (auto& l : ls) l = static_cast<Pauli>(d(rng));
    if (PauliString(ls).is_identity_letters()) ls[0] = Pauli::X;
    return PauliString(ls, d(rng));
}

}  // namespace

TEST_CASE("rot_y basics") {
    Matrix iy = Complex(0, 1) * gate_y();
    CHECK(max_abs_diff(rot_y(std::numbers::pi / 2), iy) < 1e-15);

    for (int l = 3; l <= 8; ++l) {
        Matrix sq = rot_y(theta_level(l)) * rot_y(theta_level(l));
        CHECK(max_abs_diff(sq, rot_y(theta_level(l - 1))) < 1e-14);
    }

    Matrix h = rot_y(theta_level(3)) * gate_x() * rot_y(theta_level(3)).adjoint();
    CHECK(max_abs_diff(h, gate_h()) < 1e-14);

    for (int l = 1; l <= 12; ++l) {
        Matrix u = rot_y(theta_level(l));
        CHECK(max_abs_diff(u * u.adjoint(), Matrix::Identity(2, 2)) < 1e-12);
    }
    CHECK_THROWS_AS(rot_y(std::nan("")), std::invalid_argument);
}

TEST_CASE("reflection fixes the magic states") {
    CHECK(max_abs_diff(h_level(3), gate_h()) < 1e-14);
    for (int l = 2; l <= 12; ++l) {
        Matrix h = h_level(l);
        CHECK(is_unitary(h, 1e-12));
        CHECK(is_hermitian(h, 1e-12));
        Vector m = magic_ket(l), mb = magic_bar_ket(l);
        CHECK((h * m - m).norm() < 1e-12);
        CHECK((h * mb + mb).norm() < 1e-12);
    }
}

TEST_CASE("apply_gate") {
    std::mt19937_64 rng(7);
    DensityOperator rho(random_density(2, rng), 2);
    Gate id(Matrix::Identity(2, 2), {0});
    CHECK(max_abs_diff(apply_gate(rho, id).matrix, rho.matrix) < 1e-14);

    Vector ten = kron(ket1(), ket0());
    DensityOperator in = DensityOperator::from_ket(ten);
    Gate cx(gate_cx(), {0, 1});
    Vector eleven = kron(ket1(), ket1());
    CHECK(max_abs_diff(apply_gate(in, cx).matrix, (eleven * eleven.adjoint()).eval()) < 1e-14);

    // Y swaps the magic-state pair
    DensityOperator mm = DensityOperator::from_ket(magic_ket(5));
    DensityOperator flipped = apply_gate(mm, Gate(gate_y(), {0}));
    Vector mb = magic_bar_ket(5);
    CHECK(max_abs_diff(flipped.matrix, (mb * mb.adjoint()).eval()) < 1e-14);

    CHECK_THROWS_AS(apply_gate(rho, Gate(gate_x(), {5})), std::out_of_range);
}

TEST_CASE("postselect") {
    DensityOperator plus = DensityOperator::from_ket(ket_plus());
    DensityOperator kept = postselect(plus, 0, Pauli::X, +1);
    CHECK(max_abs_diff(kept.matrix, plus.matrix) < 1e-14);
    CHECK(kept.trace() == doctest::Approx(1.0));

    DensityOperator half = postselect(plus, 0, Pauli::Z, +1);
    CHECK(half.trace() == doctest::Approx(0.5));
    Vector zero = ket0();
    CHECK(max_abs_diff(half.matrix, (0.5 * zero * zero.adjoint()).eval()) < 1e-14);

    DensityOperator dead = postselect(DensityOperator::from_ket(ket0()), 0, Pauli::Z, -1);
    CHECK(dead.trace() == doctest::Approx(0.0));

    // outcome probabilities resolve the trace
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        DensityOperator rho(random_density(3, rng), 3);
        for (Pauli obs : {Pauli::X, Pauli::Y, Pauli::Z}) {
            double p = postselect(rho, trial % 3, obs, +1).trace() +
                       postselect(rho, trial % 3, obs, -1).trace();
            CHECK(p == doctest::Approx(rho.trace()).epsilon(1e-12));
        }
    }
}

TEST_CASE("partial_trace") {
    std::mt19937_64 rng(3);
    Matrix a = random_density(1, rng), b = random_density(1, rng);
    DensityOperator prod(kron(a, b), 2);
    CHECK(max_abs_diff(partial_trace(prod, 1).matrix, a) < 1e-14);
    CHECK(max_abs_diff(partial_trace(prod, 0).matrix, b) < 1e-14);

    Vector bell = (kron(ket0(), ket0()) + kron(ket1(), ket1())) / std::sqrt(2.0);
    DensityOperator eb = DensityOperator::from_ket(bell);
    for (int q : {0, 1}) {
        DensityOperator red = partial_trace(eb, q);
        CHECK(max_abs_diff(red.matrix, (0.5 * Matrix::Identity(2, 2)).eval()) < 1e-14);
        CHECK(red.trace() == doctest::Approx(1.0));
    }

    CHECK_THROWS_AS(partial_trace(DensityOperator(a, 1), 0), std::invalid_argument);
}

TEST_CASE("trace_distance and diagonal_error") {
    std::mt19937_64 rng(5);
    DensityOperator rho(random_density(2, rng), 2);
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));

    for (int l : {3, 6, 10}) {
        DensityOperator m = DensityOperator::from_ket(magic_ket(l));
        DensityOperator mb = DensityOperator::from_ket(magic_bar_ket(l));
        CHECK(trace_distance(m, mb) == doctest::Approx(1.0).epsilon(1e-12));
        DensityOperator plus = DensityOperator::from_ket(ket_plus());
        CHECK(trace_distance(plus, m) ==
              doctest::Approx(std::abs(std::sin(theta_level(l)))).epsilon(1e-12));
    }

    Vector target = magic_ket(7);
    CHECK(diagonal_error(DensityOperator::from_ket(target), target) == doctest::Approx(0.0));
    CHECK(diagonal_error(noisy_magic_state(7, 0.01), target) == doctest::Approx(0.01));
    // matches the 1-norm for diagonal noise
    DensityOperator noisy(noisy_magic_state(4, 0.3), 1);
    CHECK(trace_distance(noisy, DensityOperator::from_ket(magic_ket(4))) ==
          doctest::Approx(0.3).epsilon(1e-12));
    CHECK(diagonal_error(noisy, magic_ket(4)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("noisy rotation channel") {
    std::mt19937_64 rng(9);
    NoisyRotationChannel ch(theta_level(4), 0.2);
    Matrix uinv = rot_y(-theta_level(4));
    for (int trial = 0; trial < 10; ++trial) {
        Matrix rho = random_density(1, rng);
        Matrix composed = uinv * ch.apply(rho) * uinv.adjoint();
        Matrix pauli = 0.8 * rho + 0.2 * gate_y() * rho * gate_y().adjoint();
        CHECK(max_abs_diff(composed, pauli) < 1e-13);
    }
    CHECK(ch.diamond_distance_to_ideal() == doctest::Approx(0.2));
    CHECK_THROWS_AS(NoisyRotationChannel(0.1, 0.7), std::invalid_argument);
}

TEST_CASE("density operator validity") {
    CHECK(DensityOperator(noisy_magic_state(5, 0.1), 1).is_valid());
    Matrix bad(2, 2);
    bad << 1.0, 0.5, -0.5, 0.0;  // not Hermitian
    CHECK_FALSE(DensityOperator(bad, 1).is_valid());
    Matrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_FALSE(DensityOperator(neg, 1).is_valid());
}

TEST_CASE("pauli string algebra") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        PauliString a = random_pauli(3, rng), b = random_pauli(3, rng), c = random_pauli(3, rng);
        // multiplication matches matrices and is associative
        CHECK(max_abs_diff((a * b).matrix(), a.matrix() * b.matrix()) < 1e-13);
        CHECK((a * b) * c == a * (b * c));
        // squares are +-identity
        PauliString sq = a * a;
        CHECK(sq.is_identity_letters());
        CHECK((sq.phase_power() % 2) == 0);
        // commutation matches matrices
        Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
        CHECK(a.commutes_with(b) == (comm.cwiseAbs().maxCoeff() < 1e-12));
    }

    CHECK(PauliString::parse("-iXYZ").str() == "-iXYZ");
    CHECK(PauliString::parse("XX") * PauliString::parse("ZZ") ==
          PauliString::parse("-YY"));

    for (int trial = 0; trial < 20; ++trial) {
        PauliString p = random_pauli(4, rng);
        auto back = PauliString::from_matrix(p.matrix());
        REQUIRE(back.has_value());
        CHECK(*back == p);
    }
    CHECK_FALSE(PauliString::from_matrix(gate_h()).has_value());
}
