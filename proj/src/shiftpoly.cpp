#include "dpii/shiftpoly.hpp"

#include <algorithm>
#include <sstream>

namespace dpii::sym {

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::x(int shift, int pow) {
    Monomial m;
    if (pow != 0)
        m.xs_.push_back({shift, pow});
    return m;
}

Monomial Monomial::theta(int index, int pow) {
    Monomial m;
    if (pow != 0)
        m.thetas_.push_back({index, pow});
    return m;
}

Monomial Monomial::n(int pow) {
    Monomial m;
    m.n_pow_ = pow;
    return m;
}

int Monomial::x_degree() const {
    int d = 0;
    for (const auto& f : xs_)
        d += f.pow;
    return d;
}

int Monomial::theta_degree() const {
    int d = 0;
    for (const auto& f : thetas_)
        d += f.pow;
    return d;
}

int Monomial::min_shift() const { return xs_.front().shift; }
int Monomial::max_shift() const { return xs_.back().shift; }

int Monomial::x_pow_at(int shift) const {
    for (const auto& f : xs_)
        if (f.shift == shift)
            return f.pow;
    return 0;
}

int Monomial::theta_pow_at(int index) const {
    for (const auto& f : thetas_)
        if (f.index == index)
            return f.pow;
    return 0;
}

namespace {

template <typename Factor, typename KeyOf>
std::vector<Factor> merge_factors(const std::vector<Factor>& a, const std::vector<Factor>& b,
                                  KeyOf key) {
    std::vector<Factor> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (key(a[i]) < key(b[j])) {
            out.push_back(a[i++]);
        } else if (key(b[j]) < key(a[i])) {
            out.push_back(b[j++]);
        } else {
            Factor f = a[i];
            f.pow += b[j].pow;
            if (f.pow != 0)
                out.push_back(f);
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i)
        out.push_back(a[i]);
    for (; j < b.size(); ++j)
        out.push_back(b[j]);
    return out;
}

} // namespace

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial m;
    m.xs_ = merge_factors(xs_, other.xs_, [](const XPower& f) { return f.shift; });
    m.thetas_ = merge_factors(thetas_, other.thetas_, [](const ThetaPower& f) { return f.index; });
    m.n_pow_ = n_pow_ + other.n_pow_;
    return m;
}

bool Monomial::divides(const Monomial& other) const {
    if (n_pow_ > other.n_pow_)
        return false;
    for (const auto& f : xs_)
        if (other.x_pow_at(f.shift) < f.pow)
            return false;
    for (const auto& f : thetas_)
        if (other.theta_pow_at(f.index) < f.pow)
            return false;
    return true;
}

Monomial Monomial::divide_into(const Monomial& numerator) const {
    Monomial q;
    q.n_pow_ = numerator.n_pow_ - n_pow_;
    for (const auto& f : numerator.xs_) {
        int p = f.pow - x_pow_at(f.shift);
        if (p > 0)
            q.xs_.push_back({f.shift, p});
    }
    for (const auto& f : numerator.thetas_) {
        int p = f.pow - theta_pow_at(f.index);
        if (p > 0)
            q.thetas_.push_back({f.index, p});
    }
    return q;
}

Monomial Monomial::shifted_x(int s) const {
    Monomial m = *this;
    for (auto& f : m.xs_)
        f.shift += s;
    return m;
}

Monomial Monomial::permuted() const {
    Monomial m = *this;
    for (auto& f : m.xs_)
        f.shift = -f.shift;
    std::sort(m.xs_.begin(), m.xs_.end(),
              [](const XPower& a, const XPower& b) { return a.shift < b.shift; });
    return m;
}

Monomial Monomial::with_n_pow(int k) const {
    Monomial m = *this;
    m.n_pow_ = k;
    return m;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
    if (auto c = total_degree() <=> other.total_degree(); c != 0)
        return c;
    if (auto c = x_degree() <=> other.x_degree(); c != 0)
        return c;
    if (auto c = n_pow_ <=> other.n_pow_; c != 0)
        return c;
    // Exponent-lexicographic walk over the x part, ascending shifts; at the
    // first shift where exponents differ, the larger exponent wins.
    {
        std::size_t i = 0, j = 0;
        while (i < xs_.size() || j < other.xs_.size()) {
            int sa = i < xs_.size() ? xs_[i].shift : INT32_MAX;
            int sb = j < other.xs_.size() ? other.xs_[j].shift : INT32_MAX;
            int s = std::min(sa, sb);
            int pa = sa == s ? xs_[i].pow : 0;
            int pb = sb == s ? other.xs_[j].pow : 0;
            if (pa != pb)
                return pa <=> pb;
            if (sa == s)
                ++i;
            if (sb == s)
                ++j;
        }
    }
    {
        std::size_t i = 0, j = 0;
        while (i < thetas_.size() || j < other.thetas_.size()) {
            int sa = i < thetas_.size() ? thetas_[i].index : INT32_MAX;
            int sb = j < other.thetas_.size() ? other.thetas_[j].index : INT32_MAX;
            int s = std::min(sa, sb);
            int pa = sa == s ? thetas_[i].pow : 0;
            int pb = sb == s ? other.thetas_[j].pow : 0;
            if (pa != pb)
                return pa <=> pb;
            if (sa == s)
                ++i;
            if (sb == s)
                ++j;
        }
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// ShiftPolynomial
// ---------------------------------------------------------------------------

ShiftPolynomial ShiftPolynomial::x(int shift, int pow) {
    ShiftPolynomial p;
    p.add_term(Monomial::x(shift, pow), Rational(1));
    return p;
}

ShiftPolynomial ShiftPolynomial::theta(int index, int pow) {
    ShiftPolynomial p;
    p.add_term(Monomial::theta(index, pow), Rational(1));
    return p;
}

ShiftPolynomial ShiftPolynomial::n(int pow) {
    ShiftPolynomial p;
    p.add_term(Monomial::n(pow), Rational(1));
    return p;
}

ShiftPolynomial ShiftPolynomial::v(int shift) {
    ShiftPolynomial p(1);
    p.add_term(Monomial::x(shift, 2), Rational(-1));
    return p;
}

bool ShiftPolynomial::has_x() const {
    for (const auto& [m, c] : terms_)
        if (m.has_x())
            return true;
    return false;
}

bool ShiftPolynomial::is_delta_constant() const {
    for (const auto& [m, c] : terms_)
        if (m.has_x() || m.n_pow() != 0)
            return false;
    return true;
}

int ShiftPolynomial::window_min() const {
    int w = 0;
    bool seen = false;
    for (const auto& [m, c] : terms_)
        if (m.has_x()) {
            w = seen ? std::min(w, m.min_shift()) : m.min_shift();
            seen = true;
        }
    return w;
}

int ShiftPolynomial::window_max() const {
    int w = 0;
    bool seen = false;
    for (const auto& [m, c] : terms_)
        if (m.has_x()) {
            w = seen ? std::max(w, m.max_shift()) : m.max_shift();
            seen = true;
        }
    return w;
}

int ShiftPolynomial::x_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.x_degree());
    return d;
}

int ShiftPolynomial::n_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.n_pow());
    return d;
}

int ShiftPolynomial::theta_pow_max(int index) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.theta_pow_at(index));
    return d;
}

Rational ShiftPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void ShiftPolynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

ShiftPolynomial ShiftPolynomial::operator-() const {
    ShiftPolynomial p = *this;
    for (auto& [m, c] : p.terms_)
        c = -c;
    return p;
}

ShiftPolynomial& ShiftPolynomial::operator+=(const ShiftPolynomial& other) {
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

ShiftPolynomial& ShiftPolynomial::operator-=(const ShiftPolynomial& other) {
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

ShiftPolynomial ShiftPolynomial::operator+(const ShiftPolynomial& other) const {
    ShiftPolynomial p = *this;
    p += other;
    return p;
}

ShiftPolynomial ShiftPolynomial::operator-(const ShiftPolynomial& other) const {
    ShiftPolynomial p = *this;
    p -= other;
    return p;
}

ShiftPolynomial ShiftPolynomial::operator*(const ShiftPolynomial& other) const {
    // Accumulate into a flat vector, then sort-and-combine; cheaper than
    // repeated map lookups for the larger Lax products.
    std::vector<std::pair<Monomial, Rational>> prods;
    prods.reserve(terms_.size() * other.terms_.size());
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_)
            prods.emplace_back(ma * mb, ca * cb);
    std::sort(prods.begin(), prods.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ShiftPolynomial p;
    auto hint = p.terms_.end();
    for (auto& [m, c] : prods) {
        if (hint != p.terms_.end() && hint->first == m) {
            hint->second += c;
        } else {
            hint = p.terms_.emplace_hint(p.terms_.end(), std::move(m), std::move(c));
        }
    }
    for (auto it = p.terms_.begin(); it != p.terms_.end();) {
        if (it->second == 0)
            it = p.terms_.erase(it);
        else
            ++it;
    }
    return p;
}

ShiftPolynomial ShiftPolynomial::operator*(const Rational& c) const {
    if (c == 0)
        return {};
    ShiftPolynomial p = *this;
    for (auto& [m, coeff] : p.terms_)
        coeff *= c;
    return p;
}

ShiftPolynomial ShiftPolynomial::drop_x_degree_at_least(int d) const {
    ShiftPolynomial p;
    for (const auto& [m, c] : terms_)
        if (m.x_degree() < d)
            p.add_term(m, c);
    return p;
}

ShiftPolynomial ShiftPolynomial::substitute_theta_zero(int index) const {
    ShiftPolynomial p;
    for (const auto& [m, c] : terms_)
        if (m.theta_pow_at(index) == 0)
            p.add_term(m, c);
    return p;
}

// ---------------------------------------------------------------------------
// Operators on the ring
// ---------------------------------------------------------------------------

namespace {

Rational binomial(int n, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i)
        r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

Rational int_pow(long base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i)
        r *= Rational(base);
    return r;
}

} // namespace

ShiftPolynomial shift(const ShiftPolynomial& p, int s) {
    if (s == 0)
        return p;
    ShiftPolynomial out;
    for (const auto& [m, c] : p.terms()) {
        Monomial base = m.shifted_x(s).with_n_pow(0);
        int k = m.n_pow();
        if (k == 0) {
            out.add_term(base, c);
            continue;
        }
        // n^k -> (n+s)^k
        for (int j = 0; j <= k; ++j)
            out.add_term(base.with_n_pow(j), c * binomial(k, j) * int_pow(s, k - j));
    }
    return out;
}

ShiftPolynomial perm(const ShiftPolynomial& p) {
    ShiftPolynomial out;
    for (const auto& [m, c] : p.terms())
        out.add_term(m.permuted(), c);
    return out;
}

ShiftPolynomial delta(const ShiftPolynomial& p) { return shift(p, 1) - p; }

namespace {

// Delta of a single monomial, as a polynomial.
ShiftPolynomial delta_monomial(const Monomial& m) {
    ShiftPolynomial p;
    p.add_term(m, Rational(1));
    return delta(p);
}

} // namespace

ShiftPolynomial delta_inverse(const ShiftPolynomial& p, const ShiftPolynomial& constant) {
    if (!constant.is_delta_constant())
        throw NotSummable("delta_inverse: supplied constant is not delta-constant");

    ShiftPolynomial g;
    ShiftPolynomial r = p;
    const int floor_shift = p.window_min();

    // Telescoping phase: repeatedly match the largest x-carrying monomial
    // (ordered by max shift, then n-power, then canonical order) against the
    // image of its down-shift. Every replacement is strictly smaller in that
    // order, so this terminates.
    while (true) {
        const Monomial* top = nullptr;
        for (const auto& [m, c] : r.terms()) {
            if (!m.has_x())
                continue;
            if (!top) {
                top = &m;
                continue;
            }
            auto better = [](const Monomial& a, const Monomial& b) {
                if (a.max_shift() != b.max_shift())
                    return a.max_shift() > b.max_shift();
                if (a.n_pow() != b.n_pow())
                    return a.n_pow() > b.n_pow();
                return a > b;
            };
            if (better(m, *top))
                top = &m;
        }
        if (!top)
            break;
        Monomial candidate = top->shifted_x(-1);
        if (candidate.min_shift() < floor_shift)
            throw NotSummable("delta_inverse: input is not a difference (telescoping hit the "
                              "window floor)");
        Rational c = r.coefficient(*top);
        g.add_term(candidate, c);
        r -= delta_monomial(candidate) * c;
    }

    // Pure-n phase: antidifference of polynomials in n always exists.
    while (!r.is_zero()) {
        // Highest n-power first.
        auto it = std::max_element(r.terms().begin(), r.terms().end(),
                                   [](const auto& a, const auto& b) {
                                       return a.first.n_pow() < b.first.n_pow();
                                   });
        const Monomial& m = it->first;
        Rational c = it->second;
        int k = m.n_pow();
        Monomial candidate = m.with_n_pow(k + 1);
        Rational lead = c / Rational(k + 1);
        g.add_term(candidate, lead);
        r -= delta_monomial(candidate) * lead;
    }

    if (!(delta(g) == p))
        throw NotSummable("delta_inverse: internal verification failed");
    return g + constant;
}

ShiftPolynomial divide_exact(const ShiftPolynomial& p, const ShiftPolynomial& q) {
    if (q.is_zero())
        throw NotDivisible("divide_exact: division by zero");
    const auto& qlead = *q.terms().rbegin();
    ShiftPolynomial quotient;
    ShiftPolynomial rem = p;
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms().rbegin();
        if (!qlead.first.divides(rlead.first))
            throw NotDivisible("divide_exact: nonzero remainder");
        Monomial qm = qlead.first.divide_into(rlead.first);
        Rational qc = rlead.second / qlead.second;
        ShiftPolynomial t;
        t.add_term(qm, qc);
        quotient += t;
        rem -= t * q;
    }
    return quotient;
}

// ---------------------------------------------------------------------------
// Numeric evaluation
// ---------------------------------------------------------------------------

namespace {

Real rational_to_real(const Rational& q) {
    Real r = 0;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

Real real_pow(const Real& base, int e) {
    Real r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

Real eval_monomial(const Monomial& m, const std::map<int, Real>& x_values,
                   const std::vector<Real>& thetas, long n_value) {
    Real val = 1;
    for (const auto& f : m.xs()) {
        auto it = x_values.find(f.shift);
        if (it == x_values.end())
            throw MissingValue("eval_numeric: no value for x at shift " +
                               std::to_string(f.shift));
        val *= real_pow(it->second, f.pow);
    }
    for (const auto& f : m.thetas()) {
        if (f.index < 1 || static_cast<std::size_t>(f.index) > thetas.size())
            throw MissingValue("eval_numeric: no value for theta_" + std::to_string(f.index));
        val *= real_pow(thetas[f.index - 1], f.pow);
    }
    if (m.n_pow() != 0)
        val *= real_pow(Real(n_value), m.n_pow());
    return val;
}

} // namespace

Real eval_numeric(const ShiftPolynomial& p, const std::map<int, Real>& x_values,
                  const std::vector<Real>& thetas, long n_value) {
    Real sum = 0;
    for (const auto& [m, c] : p.terms())
        sum += rational_to_real(c) * eval_monomial(m, x_values, thetas, n_value);
    return sum;
}

EvalResult eval_with_scale(const ShiftPolynomial& p, const std::map<int, Real>& x_values,
                           const std::vector<Real>& thetas, long n_value) {
    Real sum = 0;
    Real scale = 0;
    for (const auto& [m, c] : p.terms()) {
        Real t = rational_to_real(c) * eval_monomial(m, x_values, thetas, n_value);
        sum += t;
        Real a = abs(t);
        if (a > scale)
            scale = a;
    }
    return {sum, scale};
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

void render_monomial_text(std::ostream& os, const Monomial& m, const Rational& coeff_abs,
                          bool latex) {
    bool printed = false;
    auto sep = [&] {
        if (printed)
            os << (latex ? " " : "*");
        printed = true;
    };
    if (coeff_abs != 1 || (m.xs().empty() && m.thetas().empty() && m.n_pow() == 0)) {
        if (latex && denominator(coeff_abs) != 1) {
            os << "\\frac{" << numerator(coeff_abs) << "}{" << denominator(coeff_abs) << "}";
        } else {
            os << coeff_abs;
        }
        printed = true;
    }
    if (m.n_pow() > 0) {
        sep();
        os << "n";
        if (m.n_pow() > 1)
            os << "^" << (latex ? "{" : "") << m.n_pow() << (latex ? "}" : "");
    }
    for (const auto& f : m.thetas()) {
        sep();
        if (latex)
            os << "\\theta_{" << f.index << "}";
        else
            os << "th" << f.index;
        if (f.pow > 1)
            os << "^" << (latex ? "{" : "") << f.pow << (latex ? "}" : "");
    }
    for (const auto& f : m.xs()) {
        sep();
        if (latex) {
            os << "x_{n";
            if (f.shift > 0)
                os << "+" << f.shift;
            else if (f.shift < 0)
                os << f.shift;
            os << "}";
        } else {
            os << "x[n";
            if (f.shift > 0)
                os << "+" << f.shift;
            else if (f.shift < 0)
                os << f.shift;
            os << "]";
        }
        if (f.pow > 1)
            os << "^" << (latex ? "{" : "") << f.pow << (latex ? "}" : "");
    }
}

std::string render(const ShiftPolynomial& p, bool latex) {
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool neg = c < 0;
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        render_monomial_text(os, m, neg ? Rational(-c) : c, latex);
    }
    return os.str();
}

} // namespace

std::string to_text(const ShiftPolynomial& p) { return render(p, false); }

std::string to_latex(const ShiftPolynomial& p) { return render(p, true); }

std::string to_json_terms(const ShiftPolynomial& p) {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first)
            os << ",";
        first = false;
        os << "{\"coeff\":\"" << c << "\",\"n\":" << m.n_pow() << ",\"thetas\":[";
        bool f2 = true;
        for (const auto& t : m.thetas()) {
            if (!f2)
                os << ",";
            f2 = false;
            os << "[" << t.index << "," << t.pow << "]";
        }
        os << "],\"x\":[";
        f2 = true;
        for (const auto& f : m.xs()) {
            if (!f2)
                os << ",";
            f2 = false;
            os << "[" << f.shift << "," << f.pow << "]";
        }
        os << "]}";
    }
    os << "]";
    return os.str();
}

} // namespace dpii::sym
