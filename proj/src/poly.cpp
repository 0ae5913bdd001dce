#include "arrbs/poly.hpp"

#include <algorithm>
#include <sstream>

namespace arrbs {

void Poly::promote(Poly& a, Poly& b) {
    if (a.nvars_ == b.nvars_) return;
    Poly& small = a.nvars_ < b.nvars_ ? a : b;
    Poly& big = a.nvars_ < b.nvars_ ? b : a;
    if (!small.is_constant())
        throw std::invalid_argument("Poly: variable-count mismatch");
    Poly lifted(big.nvars_);
    if (!small.is_zero()) lifted.add_term(ExpVec(static_cast<size_t>(big.nvars_), 0), small.terms_.begin()->second);
    small = std::move(lifted);
}

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(ExpVec(static_cast<size_t>(nvars), 0), c);
    return p;
}

Poly Poly::variable(int nvars, int i, uint32_t power) {
    if (i < 0 || i >= nvars) throw std::out_of_range("Poly::variable");
    Poly p(nvars);
    ExpVec e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(i)] = power;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

Poly Poly::linear_form(int nvars, const std::vector<Rational>& coeffs) {
    Poly p(nvars);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        ExpVec e(static_cast<size_t>(nvars), 0);
        e[i] = 1;
        p.terms_.emplace(std::move(e), coeffs[i]);
    }
    return p;
}

Rational Poly::constant_term() const {
    ExpVec zero(static_cast<size_t>(nvars_), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? Rational(0) : it->second;
}

const ExpVec& Poly::leading_exponent() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.begin()->second;
}

uint32_t Poly::degree_in(int lo, int hi) const {
    uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
        uint32_t t = 0;
        for (int i = lo; i < hi; ++i) t += e[static_cast<size_t>(i)];
        d = std::max(d, t);
    }
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    uint32_t d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) != d) return false;
    return true;
}

void Poly::add_term(const ExpVec& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly p(nvars_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    Poly rhs = o;
    promote(*this, rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    Poly rhs = o;
    promote(*this, rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly lhs = a, rhs = b;
    Poly::promote(lhs, rhs);
    Poly out(lhs.nvars_);
    if (lhs.is_zero() || rhs.is_zero()) return out;
    for (const auto& [ea, ca] : lhs.terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            ExpVec e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

bool Poly::operator<(const Poly& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    auto it = terms_.begin(), jt = o.terms_.begin();
    GrlexGreater gt;
    for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return gt(it->first, jt->first);
        if (it->second != jt->second) return it->second < jt->second;
    }
    return it == terms_.end() && jt != o.terms_.end();
}

Poly Poly::pow(uint32_t k) const {
    Poly out = Poly::constant(nvars_, Rational(1));
    Poly base = *this;
    while (k) {
        if (k & 1u) out = out * base;
        base = base * base;
        k >>= 1;
    }
    return out;
}

Poly Poly::derivative(int var) const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        uint32_t k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        ExpVec d(e);
        d[static_cast<size_t>(var)] = k - 1;
        out.add_term(d, c * Rational(static_cast<long long>(k)));
    }
    return out;
}

Poly Poly::substitute(int var, const Poly& value) const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        uint32_t k = e[static_cast<size_t>(var)];
        ExpVec rest(e);
        rest[static_cast<size_t>(var)] = 0;
        Poly mono(nvars_);
        mono.add_term(rest, c);
        out += mono * value.pow(k);
    }
    return out;
}

Poly Poly::substitute_all(const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != nvars_)
        throw std::invalid_argument("substitute_all: image count mismatch");
    int out_vars = nvars_ == 0 ? 0 : images.front().nvars();
    Poly out(out_vars);
    for (const auto& [e, c] : terms_) {
        Poly mono = Poly::constant(out_vars, c);
        for (int i = 0; i < nvars_; ++i)
            if (e[static_cast<size_t>(i)] > 0) mono = mono * images[static_cast<size_t>(i)].pow(e[static_cast<size_t>(i)]);
        out += mono;
    }
    return out;
}

Poly Poly::embed(int new_nvars, const std::vector<int>& var_map) const {
    Poly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(static_cast<size_t>(new_nvars), 0);
        for (int i = 0; i < nvars_; ++i) {
            if (e[static_cast<size_t>(i)] == 0) continue;
            int j = var_map[static_cast<size_t>(i)];
            if (j < 0 || j >= new_nvars) throw std::out_of_range("Poly::embed");
            ne[static_cast<size_t>(j)] += e[static_cast<size_t>(i)];
        }
        out.add_term(ne, c);
    }
    return out;
}

Poly Poly::homogeneous_component_in(int lo, int hi, uint32_t d) const {
    Poly out(nvars_);
    for (const auto& [e, c] : terms_) {
        uint32_t t = 0;
        for (int i = lo; i < hi; ++i) t += e[static_cast<size_t>(i)];
        if (t == d) out.terms_.emplace(e, c);
    }
    return out;
}

Rational Poly::content() const {
    Rational g(0);
    for (const auto& [e, c] : terms_) g = gcd_rat(g, c);
    return g;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational coeff = c;
        if (first) {
            if (coeff.sign() < 0) { os << "-"; coeff = -coeff; }
        } else {
            os << (coeff.sign() < 0 ? " - " : " + ");
            if (coeff.sign() < 0) coeff = -coeff;
        }
        first = false;
        bool has_vars = total_degree(e) > 0;
        if (!coeff.is_one() || !has_vars) os << coeff.str();
        bool star = !coeff.is_one() || !has_vars;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (star) os << "*";
            star = true;
            os << (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::optional<Poly> try_exact_divide(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly lhs = p, rhs = q;
    Poly::promote(lhs, rhs);
    Poly quot(lhs.nvars_);
    Poly rem = lhs;
    const ExpVec& qe = rhs.leading_exponent();
    const Rational& qc = rhs.leading_coefficient();
    while (!rem.is_zero()) {
        const ExpVec& re = rem.leading_exponent();
        ExpVec diff(re);
        for (size_t i = 0; i < diff.size(); ++i) {
            if (re[i] < qe[i]) return std::nullopt;
            diff[i] = re[i] - qe[i];
        }
        Poly t(lhs.nvars_);
        t.add_term(diff, rem.leading_coefficient() / qc);
        quot += t;
        rem -= t * rhs;
    }
    return quot;
}

Poly poly_exact_divide(const Poly& p, const Poly& q) {
    auto h = try_exact_divide(p, q);
    if (!h) throw NotDivisible();
    return *h;
}

Poly det_fraction_free(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    const Eigen::Index n = m.rows();
    if (n == 0) return Poly::constant(0, Rational(1));
    PolyMatrix a = m;
    int nv = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) nv = std::max(nv, a(i, j).nvars());
    Poly prev = Poly::constant(nv, Rational(1));
    int sign = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = k; i < n; ++i)
            if (!a(i, k).is_zero()) { piv = i; break; }
        if (piv < 0) return Poly::zero(nv);
        if (piv != k) {
            a.row(piv).swap(a.row(k));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j)
                a(i, j) = poly_exact_divide(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
            a(i, k) = Poly::zero(nv);
        }
        prev = a(k, k);
    }
    Poly det = a(n - 1, n - 1);
    if (sign < 0) det = -det;
    return det;
}

} // namespace arrbs
