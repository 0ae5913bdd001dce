#include "arrbs/weyl.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace arrbs {

namespace {

BigInt binom(uint32_t n, uint32_t k) {
    if (k > n) return 0;
    BigInt out = 1;
    for (uint32_t i = 0; i < k; ++i) {
        out *= n - i;
        out /= i + 1;
    }
    return out;
}

Rational multi_binom(const ExpVec& u, const ExpVec& v) {
    BigInt out = 1;
    for (size_t i = 0; i < u.size(); ++i) out *= binom(u[i], v[i]);
    return Rational(out);
}

// Enumerates all v with 0 <= v <= u componentwise.
void for_each_below(const ExpVec& u, const std::function<void(const ExpVec&)>& fn) {
    ExpVec v(u.size(), 0);
    while (true) {
        fn(v);
        size_t i = 0;
        while (i < u.size()) {
            if (v[i] < u[i]) {
                ++v[i];
                break;
            }
            v[i] = 0;
            ++i;
        }
        if (i == u.size()) return;
    }
}

Poly diff_pow(const Poly& p, const ExpVec& v) {
    Poly out = p;
    for (size_t i = 0; i < v.size() && !out.is_zero(); ++i)
        for (uint32_t k = 0; k < v[i]; ++k) out = out.derivative(static_cast<int>(i));
    return out;
}

} // namespace

WeylOperator WeylOperator::from_poly(int n, int r, const Poly& coeff) {
    WeylOperator w(n, r);
    w.add_term(ExpVec(static_cast<size_t>(n), 0), coeff);
    return w;
}

WeylOperator WeylOperator::partial(int n, int r, int i) {
    WeylOperator w(n, r);
    ExpVec u(static_cast<size_t>(n), 0);
    u[static_cast<size_t>(i)] = 1;
    w.add_term(u, Poly::constant(n + r, Rational(1)));
    return w;
}

WeylOperator WeylOperator::s_var(int n, int r, int k) {
    return from_poly(n, r, Poly::variable(n + r, n + k));
}

WeylOperator WeylOperator::derivation(int n, int r, const std::vector<Poly>& coeffs) {
    WeylOperator w(n, r);
    for (int i = 0; i < n; ++i) {
        ExpVec u(static_cast<size_t>(n), 0);
        u[static_cast<size_t>(i)] = 1;
        w.add_term(u, coeffs[static_cast<size_t>(i)]);
    }
    return w;
}

void WeylOperator::add_term(const ExpVec& u, const Poly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(u, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylOperator WeylOperator::operator-() const {
    WeylOperator w(n_, r_);
    for (const auto& [u, c] : terms_) w.terms_.emplace(u, -c);
    return w;
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& o) {
    if (terms_.empty() && n_ == 0 && r_ == 0) {
        n_ = o.n_;
        r_ = o.r_;
    }
    if (n_ != o.n_ || r_ != o.r_) throw std::invalid_argument("WeylOperator: dimension mismatch");
    for (const auto& [u, c] : o.terms_) add_term(u, c);
    return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o) { return *this += -o; }

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    if (a.n_ != b.n_ || a.r_ != b.r_) throw std::invalid_argument("WeylOperator: dimension mismatch");
    WeylOperator out(a.n_, a.r_);
    for (const auto& [u, pu] : a.terms_) {
        for (const auto& [w, qw] : b.terms_) {
            // del^u * Q = sum_{v <= u} binom(u, v) (del^{u-v} . Q) del^v
            for_each_below(u, [&](const ExpVec& v) {
                ExpVec uv(u);
                for (size_t i = 0; i < uv.size(); ++i) uv[i] -= v[i];
                Poly d = diff_pow(qw, uv);
                if (d.is_zero()) return;
                ExpVec e(v);
                for (size_t i = 0; i < e.size(); ++i) e[i] += w[i];
                out.add_term(e, pu * d * multi_binom(u, v));
            });
        }
    }
    return out;
}

std::vector<std::pair<ExpVec, Poly>> WeylOperator::right_normal_form() const {
    // P_u del^u = sum_{v <= u} (-1)^{|v|} binom(u, v) del^{u-v} (del^v . P_u)
    std::map<ExpVec, Poly> right;
    for (const auto& [u, pu] : terms_) {
        for_each_below(u, [&](const ExpVec& v) {
            Poly d = diff_pow(pu, v);
            if (d.is_zero()) return;
            ExpVec uv(u);
            for (size_t i = 0; i < uv.size(); ++i) uv[i] -= v[i];
            Rational c = multi_binom(u, v);
            if (total_degree(v) % 2 == 1) c = -c;
            auto [it, inserted] = right.emplace(uv, d * c);
            if (!inserted) {
                it->second += d * c;
                if (it->second.is_zero()) right.erase(it);
            }
        });
    }
    return {right.begin(), right.end()};
}

Poly WeylOperator::right_constant_term() const {
    // u = 0 coefficient of the right normal form: sum_u (-1)^{|u|} del^u . P_u
    Poly out(n_ + r_);
    for (const auto& [u, pu] : terms_) {
        Poly d = diff_pow(pu, u);
        if (d.is_zero()) continue;
        if (total_degree(u) % 2 == 1) d = -d;
        out += d;
    }
    return out;
}

int WeylOperator::total_order() const {
    if (terms_.empty()) throw std::domain_error("total order of the zero operator");
    int best = 0;
    for (const auto& [u, c] : terms_)
        best = std::max(best, static_cast<int>(total_degree(u)) + static_cast<int>(c.degree_in(n_, n_ + r_)));
    return best;
}

WeylOperator WeylOperator::tau_transpose() const {
    // tau(P_u del^u) = (-del)^u P_u, then rewrite del^u P_u in left form.
    WeylOperator out(n_, r_);
    for (const auto& [u, pu] : terms_) {
        Rational sign = total_degree(u) % 2 == 1 ? Rational(-1) : Rational(1);
        for_each_below(u, [&](const ExpVec& v) {
            ExpVec uv(u);
            for (size_t i = 0; i < uv.size(); ++i) uv[i] -= v[i];
            Poly d = diff_pow(pu, uv);
            if (d.is_zero()) return;
            out.add_term(v, d * (multi_binom(u, v) * sign));
        });
    }
    return out;
}

WeylOperator WeylOperator::substitute_s(const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != r_) throw std::invalid_argument("substitute_s: expected r images");
    std::vector<Poly> full;
    full.reserve(static_cast<size_t>(n_ + r_));
    for (int i = 0; i < n_; ++i) full.push_back(Poly::variable(n_ + r_, i));
    for (int k = 0; k < r_; ++k) full.push_back(images[static_cast<size_t>(k)]);
    WeylOperator out(n_, r_);
    for (const auto& [u, pu] : terms_) out.add_term(u, pu.substitute_all(full));
    return out;
}

Poly WeylOperator::apply(const Poly& p) const {
    Poly out(n_ + r_);
    for (const auto& [u, pu] : terms_) out += pu * diff_pow(p, u);
    return out;
}

std::string WeylOperator::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [u, pu] : right_normal_form()) {
        if (!first) os << " + ";
        first = false;
        bool has_d = total_degree(u) > 0;
        if (has_d) {
            for (size_t i = 0; i < u.size(); ++i) {
                if (u[i] == 0) continue;
                os << "d" << (i < names.size() ? names[i] : std::to_string(i));
                if (u[i] > 1) os << "^" << u[i];
                os << " ";
            }
            os << "(" << pu.str(names) << ")";
        } else {
            os << "(" << pu.str(names) << ")";
        }
    }
    return os.str();
}

WeylOperator euler_cascade_product(int n, int t) {
    WeylOperator euler(n, 0);
    for (int i = 0; i < n; ++i) {
        ExpVec u(static_cast<size_t>(n), 0);
        u[static_cast<size_t>(i)] = 1;
        euler.add_term(u, Poly::variable(n, i));
    }
    WeylOperator acc = WeylOperator::from_poly(n, 0, Poly::constant(n, Rational(1)));
    for (int j = 0; j <= t; ++j)
        acc = acc * (euler + WeylOperator::from_poly(n, 0, Poly::constant(n, Rational(n + j))));
    return acc;
}

WeylOperator euler_cascade_sum(int n, int t) {
    WeylOperator out(n, 0);
    ExpVec u(static_cast<size_t>(n), 0);
    std::function<void(int, int)> gen = [&](int pos, int rest) {
        if (pos == n - 1) {
            u[static_cast<size_t>(pos)] = static_cast<uint32_t>(rest);
            BigInt multinom = 1;
            int seen = 0;
            for (uint32_t ui : u)
                for (uint32_t i = 1; i <= ui; ++i) {
                    ++seen;
                    multinom *= seen;
                    multinom /= i;
                }
            Poly xs = Poly::constant(n, Rational(multinom));
            for (int i = 0; i < n; ++i) xs = xs * Poly::variable(n, i).pow(u[static_cast<size_t>(i)]);
            WeylOperator dels(n, 0);
            dels.add_term(u, Poly::constant(n, Rational(1)));
            out += dels * WeylOperator::from_poly(n, 0, xs);
            return;
        }
        for (int k = rest; k >= 0; --k) {
            u[static_cast<size_t>(pos)] = static_cast<uint32_t>(k);
            gen(pos + 1, rest - k);
        }
    };
    gen(0, t + 1);
    return out;
}

Section act_on_section(const WeylOperator& op, const Section& sec, const SectionContext& ctx) {
    // del_i . (g F^{eS}) = (del_i g + e g sum_k s_k sum_t e_{k,t} (del_i l_t)/l_t) F^{eS}
    auto apply_partial = [&](const RatFun& g, int i) {
        RatFun out = g.derivative(i);
        for (int k = 0; k < ctx.r; ++k) {
            for (size_t t = 0; t < ctx.forms.size(); ++t) {
                int e = ctx.blocks[static_cast<size_t>(k)][t];
                if (e == 0) continue;
                Poly dl = ctx.forms[t].derivative(i);
                if (dl.is_zero()) continue;
                RatFun piece = g;
                piece.mul_num(dl * Poly::variable(ctx.n + ctx.r, ctx.n + k) * Rational(sec.eps * e));
                piece.mul_den(ctx.forms[t], 1);
                out = out + piece;
            }
        }
        return out;
    };
    RatFun acc = RatFun::zero(ctx.n + ctx.r);
    for (const auto& [u, pu] : op.terms()) {
        RatFun g = sec.coeff;
        for (size_t i = 0; i < u.size(); ++i)
            for (uint32_t k = 0; k < u[i]; ++k) g = apply_partial(g, static_cast<int>(i));
        g.mul_num(pu);
        acc = acc + g;
    }
    return Section{acc, sec.eps};
}

} // namespace arrbs
