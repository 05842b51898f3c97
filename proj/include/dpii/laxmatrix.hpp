#pragma once

#include "dpii/shiftpoly.hpp"

#include <map>
#include <string>
#include <vector>

namespace dpii::lax {

using sym::Rational;
using sym::ShiftPolynomial;

/// 2x2 matrix of shift polynomials.
struct Mat2 {
    ShiftPolynomial e11, e12, e21, e22;

    static Mat2 identity();
    static Mat2 sigma3();
    /// diag(1, 0), the constant part carrier of the z-linear factor.
    static Mat2 sigma_plus();

    Mat2 operator+(const Mat2&) const;
    Mat2 operator-(const Mat2&) const;
    Mat2 operator*(const Mat2&) const;
    Mat2 scaled(const ShiftPolynomial&) const;
    Mat2 scaled(const Rational&) const;
    Mat2 shifted_n(int s) const;
    bool operator==(const Mat2&) const = default;
    bool is_zero() const;
    ShiftPolynomial trace() const { return e11 + e22; }
};

/// z-graded 2x2 matrix: a finite Laurent polynomial in z with Mat2
/// coefficients.
class LaxMatrix {
public:
    void set(int zpow, const Mat2& m); // drops zero coefficients
    Mat2 at(int zpow) const;
    const std::map<int, Mat2>& coeff() const { return coeff_; }
    bool has(int zpow) const { return coeff_.count(zpow) != 0; }
    int z_min() const;
    int z_max() const;

    LaxMatrix operator+(const LaxMatrix&) const;
    LaxMatrix operator-(const LaxMatrix&) const;
    LaxMatrix operator*(const LaxMatrix&) const;
    bool operator==(const LaxMatrix&) const = default;
    bool is_zero() const { return coeff_.empty(); }

    LaxMatrix shifted_n(int s) const;
    LaxMatrix substitute_z_squared() const; // z -> z^2
    LaxMatrix scaled_zpow(int k) const;     // multiply by z^k

    std::string to_latex() const;
    std::string to_json() const;

private:
    std::map<int, Mat2> coeff_;
};

/// K(n) = [[x_n, -1], [-v_n, -x_n]]: the kappa-ratio conjugator with the
/// ratio eliminated through 1 - x_n^2. Satisfies K K = I.
Mat2 k_matrix();

/// U(n;z) = sigma_+ z + [[x_n x_{n+1}, -x_{n+1}], [-(1-x_{n+1}^2) x_n,
/// 1-x_{n+1}^2]].
LaxMatrix build_U();

/// T(n;z) = sum_{k=1..2N+1} T_k(n) z^{N-k}. T_1 = (theta_N/2) sigma3; the
/// off-diagonal chain follows the compatibility recursion, diagonals come
/// from a discrete integration (constants: theta_{N-i}/2 below the top, the
/// affine n at the top), and the upper half is mirrored by K-conjugation.
LaxMatrix build_T(int big_n);

struct IdentityReport {
    int big_n = 0;
    /// alpha_1..alpha_{N+1} from the squared-matrix coefficients (elements of
    /// Q[theta]; alpha_1 = theta_N^2/4).
    std::vector<ShiftPolynomial> alphas;
    /// The scalar relation carried by the middle coefficient's K-symmetry;
    /// equals the hierarchy equation.
    ShiftPolynomial equation;
};

/// Exact symbolic checks: trace z-profile, K-conjugation symmetry of the
/// mirrored half, the factorization of the middle-coefficient relation,
/// scalar squared-matrix coefficients, and the reflection link between the
/// two off-diagonal entries. Throws IdentityViolation on any failure.
IdentityReport verify_identities(const LaxMatrix& t_matrix, int big_n);

/// Collects every z-coefficient of sigma_+ - T(n+1;z) U(n;z) + U(n;z) T(n;z).
/// All must vanish identically except the z^{-1} one, which factors through a
/// single scalar; that scalar is returned. Throws UnexpectedResidual on any
/// other nonzero coefficient or a failed factorization.
ShiftPolynomial compatibility_residual(const LaxMatrix& t_matrix, const LaxMatrix& u_matrix,
                                       int big_n);

struct CresswellJoshiPair {
    LaxMatrix l_matrix; // [[z, x_n], [x_n, 1/z]]
    LaxMatrix m_matrix; // traceless, Laurent in z
};

/// Gauge map onto the standard discrete Painleve II lattice pair. Verifies
/// the discrete factor equals the fixed Cresswell-Joshi form and that the
/// z-derivative factor is traceless with the expected z-window; throws
/// GaugeMismatch otherwise.
CresswellJoshiPair cresswell_joshi_map(const LaxMatrix& t_matrix, const LaxMatrix& u_matrix,
                                       int big_n);

} // namespace dpii::lax
