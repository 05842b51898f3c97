#include "dpii/continuum.hpp"

#include "dpii/errors.hpp"
#include "dpii/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dpii::cont {

// ---------------------------------------------------------------------------
// SeriesMonomial / FormalSeries
// ---------------------------------------------------------------------------

SeriesMonomial SeriesMonomial::eps(int pow) {
    SeriesMonomial m;
    m.eps_pow_ = pow;
    return m;
}

SeriesMonomial SeriesMonomial::t(int pow) {
    SeriesMonomial m;
    m.t_pow_ = pow;
    return m;
}

SeriesMonomial SeriesMonomial::u_deriv(int order, int pow) {
    SeriesMonomial m;
    if (pow != 0)
        m.derivs_.push_back({order, pow});
    return m;
}

int SeriesMonomial::u_degree() const {
    int d = 0;
    for (const auto& f : derivs_)
        d += f.pow;
    return d;
}

SeriesMonomial SeriesMonomial::operator*(const SeriesMonomial& other) const {
    SeriesMonomial m;
    m.t_pow_ = t_pow_ + other.t_pow_;
    m.eps_pow_ = eps_pow_ + other.eps_pow_;
    std::size_t i = 0, j = 0;
    while (i < derivs_.size() && j < other.derivs_.size()) {
        if (derivs_[i].order < other.derivs_[j].order) {
            m.derivs_.push_back(derivs_[i++]);
        } else if (other.derivs_[j].order < derivs_[i].order) {
            m.derivs_.push_back(other.derivs_[j++]);
        } else {
            m.derivs_.push_back({derivs_[i].order, derivs_[i].pow + other.derivs_[j].pow});
            ++i;
            ++j;
        }
    }
    for (; i < derivs_.size(); ++i)
        m.derivs_.push_back(derivs_[i]);
    for (; j < other.derivs_.size(); ++j)
        m.derivs_.push_back(other.derivs_[j]);
    return m;
}

SeriesMonomial SeriesMonomial::without_eps() const {
    SeriesMonomial m = *this;
    m.eps_pow_ = 0;
    return m;
}

std::strong_ordering SeriesMonomial::operator<=>(const SeriesMonomial& other) const {
    if (auto c = eps_pow_ <=> other.eps_pow_; c != 0)
        return c;
    if (auto c = (u_degree() + t_pow_) <=> (other.u_degree() + other.t_pow_); c != 0)
        return c;
    if (auto c = t_pow_ <=> other.t_pow_; c != 0)
        return c;
    std::size_t i = 0, j = 0;
    while (i < derivs_.size() || j < other.derivs_.size()) {
        int oa = i < derivs_.size() ? derivs_[i].order : INT32_MAX;
        int ob = j < other.derivs_.size() ? other.derivs_[j].order : INT32_MAX;
        int o = std::min(oa, ob);
        int pa = oa == o ? derivs_[i].pow : 0;
        int pb = ob == o ? other.derivs_[j].pow : 0;
        if (pa != pb)
            return pa <=> pb;
        if (oa == o)
            ++i;
        if (ob == o)
            ++j;
    }
    return std::strong_ordering::equal;
}

void FormalSeries::add_term(const SeriesMonomial& m, const Rational& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
    FormalSeries s = *this;
    for (const auto& [m, c] : o.terms_)
        s.add_term(m, c);
    return s;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
    FormalSeries s = *this;
    for (const auto& [m, c] : o.terms_)
        s.add_term(m, -c);
    return s;
}

FormalSeries FormalSeries::multiply_truncated(const FormalSeries& o, int eps_cap) const {
    FormalSeries s;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            if (ma.eps_pow() + mb.eps_pow() > eps_cap)
                continue;
            s.add_term(ma * mb, ca * cb);
        }
    return s;
}

FormalSeries FormalSeries::operator*(const Rational& c) const {
    FormalSeries s;
    if (c == 0)
        return s;
    for (const auto& [m, coeff] : terms_)
        s.add_term(m, coeff * c);
    return s;
}

Rational FormalSeries::coefficient(const SeriesMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

FormalSeries FormalSeries::eps_slice(int k) const {
    FormalSeries s;
    for (const auto& [m, c] : terms_)
        if (m.eps_pow() == k)
            s.add_term(m.without_eps(), c);
    return s;
}

int FormalSeries::eps_min() const {
    int e = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first || m.eps_pow() < e)
            e = m.eps_pow();
        first = false;
    }
    return e;
}

// ---------------------------------------------------------------------------
// The continuum substitution
// ---------------------------------------------------------------------------

namespace {

Rational binomial(int n, int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i)
        r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

Rational int_pow_rat(int base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

// Taylor factor for one x_{n+K}: (-1)^K eps sum_{m<=order} u^{(m)} K^m eps^m / m!.
FormalSeries x_factor(int shift, int taylor_order) {
    FormalSeries f;
    Rational sign = shift % 2 ? Rational(-1) : Rational(1);
    for (int m = 0; m <= taylor_order; ++m) {
        SeriesMonomial mono = SeriesMonomial::u_deriv(m) * SeriesMonomial::eps(1 + m);
        f.add_term(mono, sign * int_pow_rat(shift, m) / factorial(m));
    }
    return f;
}

} // namespace

ContinuumLimit continuum_limit(int big_n) {
    if (big_n < 1)
        throw Error("continuum_limit: N must be >= 1");
    hier::HierarchyEquation eq = hier::generate_equation(big_n);

    ContinuumLimit limit;
    limit.big_n = big_n;
    limit.b = Rational(big_n + 1, big_n);
    limit.d = binomial(2 * big_n, big_n - 1);

    const int order_2n1 = 2 * big_n + 1;

    // n = b d eps^{-(2N+1)} + t eps^{-1}
    FormalSeries n_series;
    n_series.add_term(SeriesMonomial::eps(-order_2n1), limit.b * limit.d);
    n_series.add_term(SeriesMonomial::t(1) * SeriesMonomial::eps(-1), Rational(1));

    // theta_i = c_i d eps^{-(2N+1)}, c_i = (N-1)!(N+1)! / ((N-i)!(N+i)!)
    std::vector<Rational> theta_scale(static_cast<std::size_t>(big_n) + 1);
    for (int i = 1; i <= big_n; ++i) {
        Rational c = factorial(big_n - 1) * factorial(big_n + 1) /
                     (factorial(big_n - i) * factorial(big_n + i));
        theta_scale[static_cast<std::size_t>(i)] = c * limit.d;
    }

    // Every term of the equation is linear in (n, theta) jointly and of odd
    // degree in the x's; the global (-1)^n is extracted once.
    FormalSeries total;
    for (const auto& [mono, coeff] : eq.lhs.terms()) {
        int theta_deg = mono.theta_degree();
        if (mono.n_pow() + theta_deg != 1 || mono.x_degree() % 2 != 1)
            throw LeadingOrderNonzero("continuum_limit: unexpected equation structure");
        int deg = mono.x_degree();
        int taylor_order = std::max(0, order_2n1 - deg);

        FormalSeries term(coeff);
        if (mono.n_pow() == 1) {
            term = term.multiply_truncated(n_series, order_2n1);
        } else {
            const auto& tf = mono.thetas().front();
            // theta_i carries the scale constant and eps^{-(2N+1)}
            FormalSeries eps_factor;
            eps_factor.add_term(SeriesMonomial::eps(-order_2n1),
                                theta_scale[static_cast<std::size_t>(tf.index)]);
            term = term.multiply_truncated(eps_factor, order_2n1);
        }
        for (const auto& xf : mono.xs())
            for (int p = 0; p < xf.pow; ++p)
                term = term.multiply_truncated(x_factor(xf.shift, taylor_order), 0);
        total = total + term;
    }

    // Sub-leading orders must vanish. The leading order is eps^{-2N}
    // (from n x_n); anything stored below that is certified too.
    int k_min = std::min(total.eps_min(), -2 * big_n);
    for (int k = k_min; k < 0; ++k) {
        FormalSeries slice = total.eps_slice(k);
        CancellationEntry entry;
        entry.eps_power = k;
        std::ostringstream label;
        int g = std::gcd(-k, order_2n1);
        label << "theta^(" << (-k) / g;
        if (order_2n1 / g != 1)
            label << "/" << order_2n1 / g;
        label << ")";
        entry.theta_power = label.str();
        entry.zero = slice.is_zero();
        limit.cancellations.push_back(entry);
        if (!entry.zero)
            throw LeadingOrderNonzero("continuum_limit: order eps^" + std::to_string(k) +
                                      " failed to cancel: " + ode_text(slice));
    }

    FormalSeries raw = total.eps_slice(0);
    Rational tu = raw.coefficient(SeriesMonomial::t(1) * SeriesMonomial::u_deriv(0));
    if (tu == 0)
        throw LeadingOrderNonzero("continuum_limit: no t*u term at leading order");
    limit.normalization = tu;
    limit.ode = raw * (Rational(1) / tu);
    return limit;
}

std::vector<CancellationEntry> cancellation_report(int big_n) {
    return continuum_limit(big_n).cancellations;
}

namespace {

std::string render_series(const FormalSeries& s, bool latex) {
    if (s.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : s.terms()) {
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool printed = false;
        auto sep = [&] {
            if (printed)
                os << (latex ? " " : "*");
            printed = true;
        };
        if (a != 1 || (m.t_pow() == 0 && m.derivs().empty() && m.eps_pow() == 0)) {
            if (latex && denominator(a) != 1)
                os << "\\frac{" << numerator(a) << "}{" << denominator(a) << "}";
            else
                os << a;
            printed = true;
        }
        if (m.eps_pow() != 0) {
            sep();
            os << (latex ? "\\epsilon^{" : "eps^") << m.eps_pow() << (latex ? "}" : "");
        }
        if (m.t_pow() > 0) {
            sep();
            os << "t";
            if (m.t_pow() > 1)
                os << "^" << (latex ? "{" : "") << m.t_pow() << (latex ? "}" : "");
        }
        for (const auto& f : m.derivs()) {
            sep();
            if (latex) {
                os << "u";
                if (f.order > 0 && f.order <= 3)
                    os << std::string(static_cast<std::size_t>(f.order), '\'');
                else if (f.order > 3)
                    os << "^{(" << f.order << ")}";
            } else {
                os << "u";
                if (f.order > 0)
                    os << "(" << f.order << ")";
            }
            if (f.pow > 1)
                os << "^" << (latex ? "{" : "") << f.pow << (latex ? "}" : "");
        }
    }
    return os.str();
}

} // namespace

std::string ode_text(const FormalSeries& s) { return render_series(s, false); }

std::string ode_latex(const FormalSeries& s) { return render_series(s, true); }

std::string cancellation_json(const ContinuumLimit& limit) {
    std::ostringstream os;
    os << "{\"N\":" << limit.big_n << ",\"b\":\"" << limit.b << "\",\"d\":\"" << limit.d
       << "\",\"normalization\":\"" << limit.normalization << "\",\"cancellations\":[";
    bool first = true;
    for (const auto& e : limit.cancellations) {
        if (!first)
            os << ",";
        first = false;
        os << "{\"eps_power\":" << e.eps_power << ",\"theta_power\":\"" << e.theta_power
           << "\",\"zero\":" << (e.zero ? "true" : "false") << "}";
    }
    os << "],\"ode\":\"" << ode_text(limit.ode) << "\"}";
    return os.str();
}

} // namespace dpii::cont
