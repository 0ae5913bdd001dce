#include "arrbs/arrangement.hpp"

#include <algorithm>
#include <sstream>

namespace arrbs {

namespace {

QVector normalize_normal(const QVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!v(i).is_zero()) {
            QVector out = v;
            Rational inv = v(i).inverse();
            for (Eigen::Index j = 0; j < v.size(); ++j) out(j) *= inv;
            return out;
        }
    }
    throw ParseError("zero linear form");
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

} // namespace

int Arrangement::degree() const {
    int d = 0;
    for (int v : mult) d += v;
    return d;
}

Poly Arrangement::form(int t) const {
    std::vector<Rational> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = normals[static_cast<size_t>(t)](i);
    return Poly::linear_form(n, c);
}

Poly Arrangement::form_embedded(int t, int r) const {
    std::vector<Rational> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = normals[static_cast<size_t>(t)](i);
    return Poly::linear_form(n + r, c);
}

Poly Arrangement::defining_poly() const {
    Poly f = Poly::constant(n, Rational(1));
    for (int t = 0; t < num_forms(); ++t) f = f * form(t).pow(static_cast<uint32_t>(mult[static_cast<size_t>(t)]));
    return f;
}

Poly Arrangement::reduced_poly() const {
    Poly f = Poly::constant(n, Rational(1));
    for (int t = 0; t < num_forms(); ++t) f = f * form(t);
    return f;
}

std::string Arrangement::serialize() const {
    std::ostringstream os;
    os << "vars";
    for (const auto& v : vars) os << " " << v;
    os << "\n";
    for (int t = 0; t < num_forms(); ++t) {
        os << "form " << form(t).str(vars);
        if (mult[static_cast<size_t>(t)] > 1) os << " ^" << mult[static_cast<size_t>(t)];
        os << "\n";
    }
    if (assume_tame) os << "assume tame\n";
    if (assume_free) os << "assume free\n";
    return os.str();
}

int FactorizationSpec::block_degree(int k) const {
    int d = 0;
    for (int e : blocks[static_cast<size_t>(k)]) d += e;
    return d;
}

int FactorizationSpec::fprime_degree() const {
    int d = 0;
    for (int e : fprime) d += e;
    return d;
}

std::vector<int> FactorizationSpec::g_exponents(const Arrangement& a) const {
    std::vector<int> g(fprime.size());
    for (size_t t = 0; t < fprime.size(); ++t) g[t] = a.mult[t] - fprime[t];
    return g;
}

FactorizationSpec FactorizationSpec::trivial(const Arrangement& a) {
    FactorizationSpec s;
    s.blocks.push_back(std::vector<int>(a.mult.begin(), a.mult.end()));
    s.fprime.assign(a.mult.size(), 0);
    return s;
}

void FactorizationSpec::validate(const Arrangement& a) const {
    size_t q = a.normals.size();
    if (fprime.size() != q) throw ParseError("fprime length does not match the number of forms");
    for (size_t t = 0; t < q; ++t) {
        if (fprime[t] < 0 || fprime[t] > a.mult[t])
            throw ParseError("fprime exponent out of range at form " + std::to_string(t + 1));
    }
    for (const auto& b : blocks) {
        if (b.size() != q) throw ParseError("factor block length does not match the number of forms");
        for (int e : b)
            if (e < 0) throw ParseError("negative factor exponent");
    }
    for (size_t t = 0; t < q; ++t) {
        int sum = 0;
        for (const auto& b : blocks) sum += b[t];
        if (sum != a.mult[t])
            throw ParseError("factor blocks do not reconstruct the multiplicity of form " + std::to_string(t + 1));
    }
    for (int k = 0; k < r(); ++k)
        if (block_degree(k) == 0) throw ParseError("factor block " + std::to_string(k + 1) + " is empty");
}

bool Derivation::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

Poly Derivation::apply(const Poly& p) const {
    Poly out(nvars());
    for (int i = 0; i < nvars(); ++i) out += coeffs[static_cast<size_t>(i)] * p.derivative(i);
    return out;
}

WeylOperator Derivation::to_weyl(int r) const {
    int n = nvars();
    std::vector<int> id(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)] = i;
    std::vector<Poly> lifted;
    lifted.reserve(coeffs.size());
    for (const auto& c : coeffs) lifted.push_back(c.embed(n + r, id));
    return WeylOperator::derivation(n, r, lifted);
}

Derivation euler_field(const Arrangement& a) {
    Derivation e;
    for (int i = 0; i < a.n; ++i) e.coeffs.push_back(Poly::variable(a.n, i));
    return e;
}

namespace {

// Parses "c*x", "x", "-x", "3/2*y", "- 2*y" pieces of a linear expression.
QVector parse_linear_expr(const std::string& expr, const std::vector<std::string>& vars, int lineno) {
    auto fail = [&](const std::string& what) {
        return ParseError("line " + std::to_string(lineno) + ": " + what);
    };
    QVector coeff = QVector::Constant(static_cast<Eigen::Index>(vars.size()), Rational(0));
    std::string s;
    for (char c : expr)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw fail("empty linear form");
    size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -sign;
            ++pos;
        }
        if (pos >= s.size()) throw fail("dangling sign in linear form");
        size_t start = pos;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
        std::string term = s.substr(start, pos - start);
        Rational c(1);
        std::string name = term;
        auto star = term.find('*');
        if (star != std::string::npos) {
            c = Rational::parse(term.substr(0, star));
            name = term.substr(star + 1);
        } else if (!term.empty() && (isdigit(static_cast<unsigned char>(term[0])) || term[0] == '/')) {
            throw fail("numeric coefficient must be written as c*var in '" + term + "'");
        }
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw fail("unknown variable '" + name + "'");
        coeff(static_cast<Eigen::Index>(it - vars.begin())) += Rational(sign) * c;
    }
    return coeff;
}

} // namespace

ParsedInput parse_arrangement(const std::string& text) {
    ParsedInput out;
    Arrangement& a = out.arrangement;
    std::vector<std::vector<int>> factor_lines;
    std::vector<int> fprime_line;
    bool saw_fprime = false;
    // declaration-order slots before merging proportional forms
    std::vector<QVector> raw_normals;
    std::vector<int> raw_mult;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        auto fail = [&](const std::string& what) {
            return ParseError("line " + std::to_string(lineno) + ": " + what);
        };
        if (toks[0] == "vars") {
            if (!a.vars.empty()) throw fail("duplicate vars line");
            if (toks.size() < 2) throw fail("vars needs at least one name");
            a.vars.assign(toks.begin() + 1, toks.end());
            a.n = static_cast<int>(a.vars.size());
        } else if (toks[0] == "form") {
            if (a.vars.empty()) throw fail("form before vars");
            int mult = 1;
            size_t end = toks.size();
            if (end >= 2 && toks[end - 1].size() > 1 && toks[end - 1][0] == '^') {
                mult = std::stoi(toks[end - 1].substr(1));
                if (mult < 1) throw fail("multiplicity must be >= 1");
                --end;
            }
            std::string expr;
            for (size_t i = 1; i < end; ++i) expr += toks[i] + " ";
            QVector normal = parse_linear_expr(expr, a.vars, lineno);
            bool zero = true;
            for (Eigen::Index i = 0; i < normal.size(); ++i)
                if (!normal(i).is_zero()) zero = false;
            if (zero) throw fail("zero linear form");
            raw_normals.push_back(normalize_normal(normal));
            raw_mult.push_back(mult);
        } else if (toks[0] == "factor") {
            std::vector<int> e;
            for (size_t i = 1; i < toks.size(); ++i) e.push_back(std::stoi(toks[i]));
            factor_lines.push_back(std::move(e));
        } else if (toks[0] == "fprime") {
            if (saw_fprime) throw fail("duplicate fprime line");
            saw_fprime = true;
            for (size_t i = 1; i < toks.size(); ++i) fprime_line.push_back(std::stoi(toks[i]));
        } else if (toks[0] == "assume") {
            if (toks.size() != 2 || (toks[1] != "tame" && toks[1] != "free")) throw fail("assume tame|free");
            if (toks[1] == "tame") a.assume_tame = true;
            else a.assume_free = true;
        } else {
            throw fail("unknown directive '" + toks[0] + "'");
        }
    }
    if (a.vars.empty()) throw ParseError("missing vars line");
    if (raw_normals.empty()) throw ParseError("no forms given");

    // merge proportional normals; factor/fprime lines refer to declaration slots
    std::vector<int> slot_of(raw_normals.size());
    for (size_t i = 0; i < raw_normals.size(); ++i) {
        int found = -1;
        for (size_t j = 0; j < a.normals.size(); ++j)
            if (a.normals[j] == raw_normals[i]) { found = static_cast<int>(j); break; }
        if (found < 0) {
            a.normals.push_back(raw_normals[i]);
            a.mult.push_back(raw_mult[i]);
            found = static_cast<int>(a.normals.size()) - 1;
        } else {
            a.mult[static_cast<size_t>(found)] += raw_mult[i];
        }
        slot_of[i] = found;
    }

    auto remap = [&](const std::vector<int>& per_decl) {
        if (per_decl.size() != raw_normals.size())
            throw ParseError("exponent line must list one entry per form line (got " +
                             std::to_string(per_decl.size()) + ", expected " + std::to_string(raw_normals.size()) + ")");
        std::vector<int> per_form(a.normals.size(), 0);
        for (size_t i = 0; i < per_decl.size(); ++i) per_form[static_cast<size_t>(slot_of[i])] += per_decl[i];
        return per_form;
    };

    FactorizationSpec& spec = out.spec;
    if (factor_lines.empty()) {
        spec.blocks.push_back(std::vector<int>(a.mult.begin(), a.mult.end()));
    } else {
        for (const auto& fl : factor_lines) spec.blocks.push_back(remap(fl));
    }
    spec.fprime = saw_fprime ? remap(fprime_line) : std::vector<int>(a.normals.size(), 0);
    spec.validate(a);
    return out;
}

int arrangement_rank(const Arrangement& a) {
    QMatrix m(static_cast<Eigen::Index>(a.normals.size()), a.n);
    for (size_t t = 0; t < a.normals.size(); ++t) m.row(static_cast<Eigen::Index>(t)) = a.normals[t].transpose();
    return static_cast<int>(rank_of(m));
}

Essentialization essentialize(const Arrangement& a) {
    QMatrix m(static_cast<Eigen::Index>(a.normals.size()), a.n);
    for (size_t t = 0; t < a.normals.size(); ++t) m.row(static_cast<Eigen::Index>(t)) = a.normals[t].transpose();
    RrefResult r = rref(m);
    Essentialization out;
    out.coord_rows = r.rref.topRows(r.rank);
    if (static_cast<int>(r.rank) == a.n) {
        // full rank: the reduced basis is the identity and nothing changes
        out.arrangement = a;
        return out;
    }
    Arrangement& e = out.arrangement;
    e.n = static_cast<int>(r.rank);
    e.assume_tame = a.assume_tame;
    e.assume_free = a.assume_free;
    for (int i = 0; i < e.n; ++i) e.vars.push_back("y" + std::to_string(i + 1));
    // express each normal over the basis rows: normal^T = c^T * coord_rows
    for (size_t t = 0; t < a.normals.size(); ++t) {
        QVector c;
        if (!solve_exact(out.coord_rows.transpose(), a.normals[t], c))
            throw std::logic_error("essentialize: normal outside its own span");
        e.normals.push_back(normalize_normal(c));
        e.mult.push_back(a.mult[t]);
    }
    // merging cannot happen: distinct normals stay distinct under a linear isomorphism
    return out;
}

Arrangement restrict_to_forms(const Arrangement& a, const std::vector<int>& keep) {
    Arrangement out;
    out.n = a.n;
    out.vars = a.vars;
    out.assume_tame = a.assume_tame;
    out.assume_free = a.assume_free;
    for (int t : keep) {
        out.normals.push_back(a.normals[static_cast<size_t>(t)]);
        out.mult.push_back(a.mult[static_cast<size_t>(t)]);
    }
    return out;
}

} // namespace arrbs
