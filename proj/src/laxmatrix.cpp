#include "dpii/laxmatrix.hpp"

#include "dpii/errors.hpp"

#include <sstream>

namespace dpii::lax {

using SP = ShiftPolynomial;

// ---------------------------------------------------------------------------
// Mat2
// ---------------------------------------------------------------------------

Mat2 Mat2::identity() { return {SP(1), SP(0), SP(0), SP(1)}; }
Mat2 Mat2::sigma3() { return {SP(1), SP(0), SP(0), SP(-1)}; }
Mat2 Mat2::sigma_plus() { return {SP(1), SP(0), SP(0), SP(0)}; }

Mat2 Mat2::operator+(const Mat2& o) const {
    return {e11 + o.e11, e12 + o.e12, e21 + o.e21, e22 + o.e22};
}

Mat2 Mat2::operator-(const Mat2& o) const {
    return {e11 - o.e11, e12 - o.e12, e21 - o.e21, e22 - o.e22};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {e11 * o.e11 + e12 * o.e21, e11 * o.e12 + e12 * o.e22,
            e21 * o.e11 + e22 * o.e21, e21 * o.e12 + e22 * o.e22};
}

Mat2 Mat2::scaled(const ShiftPolynomial& p) const {
    return {e11 * p, e12 * p, e21 * p, e22 * p};
}

Mat2 Mat2::scaled(const Rational& c) const { return {e11 * c, e12 * c, e21 * c, e22 * c}; }

Mat2 Mat2::shifted_n(int s) const {
    return {sym::shift(e11, s), sym::shift(e12, s), sym::shift(e21, s), sym::shift(e22, s)};
}

bool Mat2::is_zero() const {
    return e11.is_zero() && e12.is_zero() && e21.is_zero() && e22.is_zero();
}

// ---------------------------------------------------------------------------
// LaxMatrix
// ---------------------------------------------------------------------------

void LaxMatrix::set(int zpow, const Mat2& m) {
    if (m.is_zero())
        coeff_.erase(zpow);
    else
        coeff_[zpow] = m;
}

Mat2 LaxMatrix::at(int zpow) const {
    auto it = coeff_.find(zpow);
    return it == coeff_.end() ? Mat2{} : it->second;
}

int LaxMatrix::z_min() const { return coeff_.empty() ? 0 : coeff_.begin()->first; }
int LaxMatrix::z_max() const { return coeff_.empty() ? 0 : coeff_.rbegin()->first; }

LaxMatrix LaxMatrix::operator+(const LaxMatrix& o) const {
    LaxMatrix out = *this;
    for (const auto& [k, m] : o.coeff_)
        out.set(k, out.at(k) + m);
    return out;
}

LaxMatrix LaxMatrix::operator-(const LaxMatrix& o) const {
    LaxMatrix out = *this;
    for (const auto& [k, m] : o.coeff_)
        out.set(k, out.at(k) - m);
    return out;
}

LaxMatrix LaxMatrix::operator*(const LaxMatrix& o) const {
    LaxMatrix out;
    for (const auto& [ka, ma] : coeff_)
        for (const auto& [kb, mb] : o.coeff_)
            out.set(ka + kb, out.at(ka + kb) + ma * mb);
    return out;
}

LaxMatrix LaxMatrix::shifted_n(int s) const {
    LaxMatrix out;
    for (const auto& [k, m] : coeff_)
        out.set(k, m.shifted_n(s));
    return out;
}

LaxMatrix LaxMatrix::substitute_z_squared() const {
    LaxMatrix out;
    for (const auto& [k, m] : coeff_)
        out.set(2 * k, m);
    return out;
}

LaxMatrix LaxMatrix::scaled_zpow(int s) const {
    LaxMatrix out;
    for (const auto& [k, m] : coeff_)
        out.set(k + s, m);
    return out;
}

std::string LaxMatrix::to_latex() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
        if (!first)
            os << " + ";
        first = false;
        if (it->first != 0)
            os << "z^{" << it->first << "}";
        os << "\\begin{pmatrix} " << sym::to_latex(it->second.e11) << " & "
           << sym::to_latex(it->second.e12) << " \\\\ " << sym::to_latex(it->second.e21) << " & "
           << sym::to_latex(it->second.e22) << " \\end{pmatrix}";
    }
    if (first)
        os << "0";
    return os.str();
}

std::string LaxMatrix::to_json() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
        if (!first)
            os << ",";
        first = false;
        os << "{\"z_pow\":" << it->first << ",\"e11\":" << sym::to_json_terms(it->second.e11)
           << ",\"e12\":" << sym::to_json_terms(it->second.e12)
           << ",\"e21\":" << sym::to_json_terms(it->second.e21)
           << ",\"e22\":" << sym::to_json_terms(it->second.e22) << "}";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

Mat2 k_matrix() { return {SP::x(0), SP(-1), -SP::v(0), -SP::x(0)}; }

LaxMatrix build_U() {
    LaxMatrix u;
    u.set(1, Mat2::sigma_plus());
    Mat2 u0{SP::x(0) * SP::x(1), -SP::x(1), -(SP::v(1) * SP::x(0)), SP::v(1)};
    u.set(0, u0);
    return u;
}

LaxMatrix build_T(int big_n) {
    if (big_n < 1)
        throw Error("build_T: N must be >= 1");
    const int n2 = 2 * big_n;

    std::vector<Mat2> t(static_cast<std::size_t>(n2 + 2)); // t[1]..t[2N+1]
    t[1] = Mat2::sigma3().scaled(SP::theta(big_n) * Rational(1, 2));

    const SP x0 = SP::x(0);
    const SP x1 = SP::x(1);
    const SP v1 = SP::v(1);
    for (int i = 1; i <= big_n; ++i) {
        const Mat2& ti = t[static_cast<std::size_t>(i)];
        SP a12 = -(x1 * sym::shift(ti.e11, 1)) + v1 * sym::shift(ti.e12, 1) - x0 * x1 * ti.e12 +
                 x1 * ti.e22;
        SP a21_up = -(x0 * x1 * sym::shift(ti.e21, 1)) + x0 * v1 * sym::shift(ti.e22, 1) -
                    x0 * v1 * ti.e11 + v1 * ti.e21;
        // The diagonal comes from a discrete integration of the off-diagonal
        // pair; the up-shifted 21 entry is exactly divisible by v_{n+1}.
        SP integrand = -(x1 * sym::divide_exact(a21_up, v1)) + x0 * a12;
        SP g = sym::delta_inverse(integrand, SP(0));
        Mat2 next;
        next.e12 = a12;
        next.e21 = sym::shift(a21_up, -1);
        if (i + 1 <= big_n) {
            next.e11 = g + SP::theta(big_n - i) * Rational(1, 2);
            next.e22 = -next.e11;
        } else {
            next.e11 = g + SP::n();
            next.e22 = -g; // trace n
        }
        t[static_cast<std::size_t>(i + 1)] = next;
    }

    const Mat2 k = k_matrix();
    for (int j = big_n + 2; j <= n2 + 1; ++j)
        t[static_cast<std::size_t>(j)] =
            (k * t[static_cast<std::size_t>(n2 + 2 - j)] * k).scaled(Rational(-1));

    LaxMatrix out;
    for (int kk = 1; kk <= n2 + 1; ++kk)
        out.set(big_n - kk, t[static_cast<std::size_t>(kk)]);
    return out;
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------

namespace {

void require_zero(const SP& p, const std::string& what) {
    if (!p.is_zero())
        throw IdentityViolation(what + "; residual = " + sym::to_text(p));
}

void require_zero(const Mat2& m, const std::string& what) {
    require_zero(m.e11, what + " (entry 11)");
    require_zero(m.e12, what + " (entry 12)");
    require_zero(m.e21, what + " (entry 21)");
    require_zero(m.e22, what + " (entry 22)");
}

// Scalar relation carried by the middle coefficient:
// x_n (T_{N+1,11} - T_{N+1,22}) - v_n T_{N+1,12} - T_{N+1,21}.
SP middle_relation(const Mat2& mid) {
    return SP::x(0) * (mid.e11 - mid.e22) - SP::v(0) * mid.e12 - mid.e21;
}

} // namespace

IdentityReport verify_identities(const LaxMatrix& t_matrix, int big_n) {
    IdentityReport report;
    report.big_n = big_n;
    const int n2 = 2 * big_n;
    const Mat2 k = k_matrix();

    // K is an involution once kappa ratios are eliminated.
    require_zero(k * k - Mat2::identity(), "K K = I");

    // Trace profile: tr T(n;z) = n z^{-1}.
    for (int kk = 1; kk <= n2 + 1; ++kk) {
        SP tr = t_matrix.at(big_n - kk).trace();
        if (kk == big_n + 1)
            tr -= SP::n();
        require_zero(tr, "trace coefficient at z^{" + std::to_string(big_n - kk) + "}");
    }

    // K-conjugation symmetry of the mirrored half.
    for (int j = 1; j <= big_n; ++j) {
        Mat2 lhs = t_matrix.at(big_n - j) + k * t_matrix.at(big_n - (n2 + 2 - j)) * k;
        require_zero(lhs, "K symmetry at k = " + std::to_string(j));
    }

    // Middle coefficient: T_{N+1} + K T_{N+1} K - n I = E * K with E the
    // scalar hierarchy relation.
    const Mat2 mid = t_matrix.at(-1);
    SP equation = middle_relation(mid);
    Mat2 residual = mid + k * mid * k - Mat2::identity().scaled(SP::n()) - k.scaled(equation);
    require_zero(residual, "middle-coefficient relation does not factor through its scalar");
    report.equation = equation;

    // Squared matrix: C_k = sum_j T_j T_{k+1-j}; scalar for k <= N, affine
    // at k = N+1.
    for (int kk = 1; kk <= big_n + 1; ++kk) {
        Mat2 c;
        for (int j = 1; j <= kk; ++j)
            c = c + t_matrix.at(big_n - j) * t_matrix.at(big_n - (kk + 1 - j));
        require_zero(c.e12, "C_" + std::to_string(kk) + " off-diagonal 12");
        require_zero(c.e21, "C_" + std::to_string(kk) + " off-diagonal 21");
        if (kk <= big_n) {
            require_zero(c.e11 - c.e22, "C_" + std::to_string(kk) + " diagonal equality");
            require_zero(sym::delta(c.e11), "C_" + std::to_string(kk) + " n-independence");
            if (!c.e11.is_delta_constant())
                throw IdentityViolation("C_" + std::to_string(kk) + " is not a theta constant");
            report.alphas.push_back(c.e11);
        } else {
            require_zero(c.e11 - c.e22 - SP::n() * SP::theta(big_n),
                         "C_{N+1} diagonal difference");
            if (!c.e22.is_delta_constant())
                throw IdentityViolation("C_{N+1} alpha is not a theta constant");
            report.alphas.push_back(c.e22);
        }
    }
    // alpha_1 = theta_N^2 / 4.
    require_zero(report.alphas.front() - SP::theta(big_n, 2) * Rational(1, 4),
                 "alpha_1 = theta_N^2/4");

    // Reflection link between the off-diagonal entries:
    // T_{k,21} = v_n Perm(T_{k,12}).
    for (int kk = 1; kk <= big_n + 1; ++kk) {
        const Mat2 tk = t_matrix.at(big_n - kk);
        require_zero(tk.e21 - SP::v(0) * sym::perm(tk.e12),
                     "reflection link at k = " + std::to_string(kk));
    }
    return report;
}

ShiftPolynomial compatibility_residual(const LaxMatrix& t_matrix, const LaxMatrix& u_matrix,
                                       int big_n) {
    LaxMatrix zc;
    zc.set(0, Mat2::sigma_plus());
    zc = zc - t_matrix.shifted_n(1) * u_matrix + u_matrix * t_matrix;

    for (const auto& [zpow, m] : zc.coeff()) {
        if (zpow == -1)
            continue;
        if (!m.is_zero())
            throw UnexpectedResidual("compatibility coefficient at z^{" + std::to_string(zpow) +
                                     "} is nonzero");
    }
    (void)big_n;

    Mat2 w = zc.at(-1);
    if (!w.e22.is_zero())
        throw UnexpectedResidual("compatibility z^{-1} coefficient: entry 22 nonzero");
    // W = E(n) K(n+1) sigma_+ - E(n+1) sigma_+ K(n), i.e.
    // W = [[x_{n+1} E - x_n E(n+1), E(n+1)], [-v_{n+1} E, 0]].
    SP equation = sym::shift(w.e12, -1);
    if (!(w.e21 + SP::v(1) * equation).is_zero())
        throw UnexpectedResidual("compatibility z^{-1} coefficient: entry 21 does not match");
    if (!(w.e11 - SP::x(1) * equation + SP::x(0) * w.e12).is_zero())
        throw UnexpectedResidual("compatibility z^{-1} coefficient: entry 11 does not match");
    return equation;
}

CresswellJoshiPair cresswell_joshi_map(const LaxMatrix& t_matrix, const LaxMatrix& u_matrix,
                                       int big_n) {
    const Mat2 lower_prev{SP(1), SP(0), SP::x(-1), SP(1)};  // [[1,0],[x_{n-1},1]]
    const Mat2 lower_cur{SP(1), SP(0), -SP::x(0), SP(1)};   // [[1,0],[-x_n,1]]

    auto entry_offsets = [](const LaxMatrix& m, int o11, int o12, int o21, int o22) {
        LaxMatrix out;
        for (const auto& [k, c] : m.coeff()) {
            LaxMatrix tmp;
            out.set(k + o11, out.at(k + o11) + Mat2{c.e11, SP(0), SP(0), SP(0)});
            out.set(k + o12, out.at(k + o12) + Mat2{SP(0), c.e12, SP(0), SP(0)});
            out.set(k + o21, out.at(k + o21) + Mat2{SP(0), SP(0), c.e21, SP(0)});
            out.set(k + o22, out.at(k + o22) + Mat2{SP(0), SP(0), SP(0), c.e22});
        }
        return out;
    };
    auto sigma3_conjugate = [](const LaxMatrix& m) {
        LaxMatrix out;
        for (const auto& [k, c] : m.coeff())
            out.set(k, Mat2{c.e11, -c.e12, -c.e21, c.e22});
        return out;
    };
    auto mat_times = [](const Mat2& a, const LaxMatrix& m) {
        LaxMatrix out;
        for (const auto& [k, c] : m.coeff())
            out.set(k, a * c);
        return out;
    };
    auto times_mat = [](const LaxMatrix& m, const Mat2& a) {
        LaxMatrix out;
        for (const auto& [k, c] : m.coeff())
            out.set(k, c * a);
        return out;
    };

    // Discrete factor: conjugating the shift matrix at n-1 (in z^2) by the
    // half-integer gauge must give [[z, x_n], [x_n, 1/z]].
    LaxMatrix inner = times_mat(
        mat_times(lower_cur, u_matrix.shifted_n(-1).substitute_z_squared()), lower_prev);
    LaxMatrix l_matrix = sigma3_conjugate(entry_offsets(inner, -1, 0, -2, -1));

    LaxMatrix l_expected;
    l_expected.set(1, Mat2::sigma_plus());
    l_expected.set(0, Mat2{SP(0), SP::x(0), SP::x(0), SP(0)});
    l_expected.set(-1, Mat2{SP(0), SP(0), SP(0), SP(1)});
    if (!(l_matrix == l_expected))
        throw GaugeMismatch("cresswell_joshi_map: discrete factor is not the standard form");

    // Derivative factor:
    // z^{-1} diag(-n+3/2, -n+1/2) + 2z sigma3 diag(z,1) A T(n-1;z^2) B diag(1/z,1) sigma3.
    LaxMatrix m_matrix;
    m_matrix.set(-1, Mat2{SP(Rational(3, 2)) - SP::n(), SP(0), SP(0),
                          SP(Rational(1, 2)) - SP::n()});
    LaxMatrix core = times_mat(
        mat_times(Mat2{SP(1), SP(0), -SP::x(-1), SP(1)},
                  t_matrix.shifted_n(-1).substitute_z_squared()),
        Mat2{SP(1), SP(0), SP::x(-1), SP(1)});
    // offsets: row scaling diag(z,1), column scaling diag(1/z,1), then * 2z
    LaxMatrix second = sigma3_conjugate(entry_offsets(core, 1, 2, 0, 1));
    for (const auto& [k, c] : second.coeff())
        m_matrix.set(k, m_matrix.at(k) + c.scaled(Rational(2)));

    for (const auto& [k, c] : m_matrix.coeff()) {
        if (!c.trace().is_zero())
            throw GaugeMismatch("cresswell_joshi_map: derivative factor has nonzero trace at z^{" +
                                std::to_string(k) + "}");
    }
    if (m_matrix.z_min() < -2 * big_n - 2 || m_matrix.z_max() > 2 * big_n - 1)
        throw GaugeMismatch("cresswell_joshi_map: derivative factor outside the expected "
                            "z-window");
    return {l_matrix, m_matrix};
}

} // namespace dpii::lax
