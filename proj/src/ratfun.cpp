#include "arrbs/ratfun.hpp"

#include <algorithm>
#include <sstream>

namespace arrbs {

namespace {

Poly make_monic(const Poly& form) {
    if (form.is_zero()) throw std::domain_error("RatFun: zero denominator factor");
    Poly f = form;
    f *= form.leading_coefficient().inverse();
    return f;
}

} // namespace

Poly RatFun::den() const {
    Poly d = Poly::constant(num_.nvars(), Rational(1));
    for (const auto& [f, e] : den_) d = d * f.pow(static_cast<uint32_t>(e));
    return d;
}

void RatFun::mul_den(const Poly& form, int exp) {
    if (exp == 0) return;
    Poly f = make_monic(form);
    auto it = std::find_if(den_.begin(), den_.end(), [&](const auto& p) { return p.first == f; });
    if (it == den_.end())
        den_.emplace_back(std::move(f), exp);
    else
        it->second += exp;
    normalize();
}

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& [f, e] : den_) {
        while (e > 0) {
            auto q = try_exact_divide(num_, f);
            if (!q) break;
            num_ = std::move(*q);
            --e;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const auto& p) { return p.second <= 0; }), den_.end());
    std::sort(den_.begin(), den_.end(), [](const auto& a, const auto& b) {
        if (a.first == b.first) return a.second < b.second;
        return a.first < b.first;
    });
}

RatFun RatFun::operator-() const {
    RatFun out = *this;
    out.num_ = -out.num_;
    return out;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // lcm of the factored denominators
    RatFun out;
    std::vector<std::pair<Poly, int>> lcm = a.den_;
    for (const auto& [f, e] : b.den_) {
        auto it = std::find_if(lcm.begin(), lcm.end(), [&](const auto& p) { return p.first == f; });
        if (it == lcm.end())
            lcm.emplace_back(f, e);
        else
            it->second = std::max(it->second, e);
    }
    auto cofactor = [&](const std::vector<std::pair<Poly, int>>& den, int nvars) {
        Poly c = Poly::constant(nvars, Rational(1));
        for (const auto& [f, e] : lcm) {
            int have = 0;
            auto it = std::find_if(den.begin(), den.end(), [&](const auto& p) { return p.first == f; });
            if (it != den.end()) have = it->second;
            if (e > have) c = c * f.pow(static_cast<uint32_t>(e - have));
        }
        return c;
    };
    int nv = std::max(a.num_.nvars(), b.num_.nvars());
    out.num_ = a.num_ * cofactor(a.den_, nv) + b.num_ * cofactor(b.den_, nv);
    out.den_ = std::move(lcm);
    out.normalize();
    return out;
}

RatFun operator*(const RatFun& a, const RatFun& b) {
    RatFun out;
    out.num_ = a.num_ * b.num_;
    out.den_ = a.den_;
    for (const auto& [f, e] : b.den_) {
        auto it = std::find_if(out.den_.begin(), out.den_.end(), [&](const auto& p) { return p.first == f; });
        if (it == out.den_.end())
            out.den_.emplace_back(f, e);
        else
            it->second += e;
    }
    out.normalize();
    return out;
}

bool operator==(const RatFun& a, const RatFun& b) {
    // Both sides are normalized, so cross-multiplied numerators must agree.
    return (a - b).is_zero();
}

RatFun RatFun::derivative(int var) const {
    // d/dx (num / prod f^e) = (num' - num * sum e_i f_i'/f_i) / den
    RatFun out;
    out.num_ = num_.derivative(var);
    out.den_ = den_;
    for (const auto& [f, e] : den_) {
        RatFun piece;
        piece.num_ = num_ * f.derivative(var) * Rational(-e);
        piece.den_ = den_;
        auto it = std::find_if(piece.den_.begin(), piece.den_.end(), [&](const auto& p) { return p.first == f; });
        it->second += 1;
        piece.normalize();
        out.normalize();
        out = out + piece;
    }
    out.normalize();
    return out;
}

std::string RatFun::str(const std::vector<std::string>& names) const {
    if (den_.empty()) return num_.str(names);
    std::ostringstream os;
    os << "(" << num_.str(names) << ") / (";
    bool first = true;
    for (const auto& [f, e] : den_) {
        if (!first) os << "*";
        first = false;
        os << "(" << f.str(names) << ")";
        if (e > 1) os << "^" << e;
    }
    os << ")";
    return os.str();
}

} // namespace arrbs
