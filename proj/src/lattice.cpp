#include "arrbs/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace arrbs {

namespace {

std::string basis_key(const QMatrix& basis) {
    std::ostringstream os;
    os << basis.rows() << "x" << basis.cols() << ":";
    for (Eigen::Index i = 0; i < basis.rows(); ++i)
        for (Eigen::Index j = 0; j < basis.cols(); ++j) os << basis(i, j).str() << ",";
    return os.str();
}

bool in_rowspace(const QMatrix& basis, const QVector& v) {
    if (basis.rows() == 0) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (!v(i).is_zero()) return false;
        return true;
    }
    QVector c;
    return solve_exact(basis.transpose(), v, c);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

} // namespace

std::vector<Flat> build_lattice(const Arrangement& a) {
    const int q = a.num_forms();
    std::map<std::string, Flat> seen;

    Flat ambient;
    ambient.basis = QMatrix(0, a.n);
    ambient.rank = 0;
    ambient.key = basis_key(ambient.basis);
    seen.emplace(ambient.key, ambient);

    std::vector<Flat> frontier{ambient};
    while (!frontier.empty()) {
        std::vector<Flat> next;
        for (const Flat& x : frontier) {
            for (int t = 0; t < q; ++t) {
                if (std::binary_search(x.jset.begin(), x.jset.end(), t)) continue;
                QMatrix stacked(x.basis.rows() + 1, a.n);
                stacked.topRows(x.basis.rows()) = x.basis;
                stacked.row(x.basis.rows()) = a.normals[static_cast<size_t>(t)].transpose();
                RrefResult r = rref(stacked);
                Flat y;
                y.basis = r.rref.topRows(r.rank);
                y.rank = static_cast<int>(r.rank);
                y.key = basis_key(y.basis);
                if (seen.count(y.key)) continue;
                for (int u = 0; u < q; ++u)
                    if (in_rowspace(y.basis, a.normals[static_cast<size_t>(u)])) y.jset.push_back(u);
                seen.emplace(y.key, y);
                next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }

    std::vector<Flat> flats;
    flats.reserve(seen.size());
    for (auto& [key, f] : seen) flats.push_back(std::move(f));
    std::sort(flats.begin(), flats.end(), [](const Flat& x, const Flat& y) {
        if (x.rank != y.rank) return x.rank < y.rank;
        return x.key < y.key;
    });
    for (size_t i = 0; i < flats.size(); ++i) flats[i].id = static_cast<int>(i);

    // cover relations: X < Y with rank gap 1 and J(X) subset of J(Y)
    for (size_t i = 0; i < flats.size(); ++i) {
        for (size_t j = 0; j < flats.size(); ++j) {
            if (flats[j].rank != flats[i].rank + 1) continue;
            if (std::includes(flats[j].jset.begin(), flats[j].jset.end(), flats[i].jset.begin(), flats[i].jset.end())) {
                flats[i].covers.push_back(flats[j].id);
                flats[j].covered_by.push_back(flats[i].id);
            }
        }
    }
    return flats;
}

std::vector<EdgeRecord> edge_records(const Arrangement& a, const std::vector<Flat>& lattice,
                                     const FactorizationSpec& spec) {
    std::vector<EdgeRecord> out;
    for (const Flat& x : lattice) {
        if (x.rank == 0) continue;
        EdgeRecord e;
        e.flat_id = x.id;
        e.rank = x.rank;
        e.d_x_red = static_cast<int>(x.jset.size());
        e.d_x_k.assign(static_cast<size_t>(spec.r()), 0);
        for (int t : x.jset) {
            e.d_x += a.mult[static_cast<size_t>(t)];
            e.d_x_prime += spec.fprime[static_cast<size_t>(t)];
            for (int k = 0; k < spec.r(); ++k) e.d_x_k[static_cast<size_t>(k)] += spec.blocks[static_cast<size_t>(k)][static_cast<size_t>(t)];
        }
        e.d_x_second = e.d_x - e.d_x_prime;
        e.indecomposable = is_indecomposable(a, x);
        out.push_back(std::move(e));
    }
    return out;
}

bool is_indecomposable(const Arrangement& a, const Flat& flat) {
    if (flat.rank < 1) throw std::invalid_argument("indecomposability needs rank >= 1");
    const auto& j = flat.jset;
    const int m = static_cast<int>(j.size());
    if (m == 1) return true; // single form, possibly repeated: one parallel class
    UnionFind uf(m);

    // greedy basis among the normals through the flat
    std::vector<int> basis_members;
    QMatrix basis(0, a.n);
    for (int i = 0; i < m; ++i) {
        const QVector& v = a.normals[static_cast<size_t>(j[static_cast<size_t>(i)])];
        if (!in_rowspace(basis, v)) {
            QMatrix stacked(basis.rows() + 1, a.n);
            stacked.topRows(basis.rows()) = basis;
            stacked.row(basis.rows()) = v.transpose();
            basis = rref(stacked).rref.topRows(basis.rows() + 1);
            basis_members.push_back(i);
        }
    }

    // fundamental circuit of each non-basis element merges its support
    QMatrix bmat(static_cast<Eigen::Index>(basis_members.size()), a.n);
    for (size_t b = 0; b < basis_members.size(); ++b)
        bmat.row(static_cast<Eigen::Index>(b)) =
            a.normals[static_cast<size_t>(j[static_cast<size_t>(basis_members[b])])].transpose();
    for (int i = 0; i < m; ++i) {
        if (std::find(basis_members.begin(), basis_members.end(), i) != basis_members.end()) continue;
        QVector c;
        if (!solve_exact(bmat.transpose(), a.normals[static_cast<size_t>(j[static_cast<size_t>(i)])], c))
            throw std::logic_error("matroid element outside basis span");
        for (Eigen::Index b = 0; b < c.size(); ++b)
            if (!c(b).is_zero()) uf.unite(i, basis_members[static_cast<size_t>(b)]);
    }
    int root = uf.find(0);
    for (int i = 1; i < m; ++i)
        if (uf.find(i) != root) return false;
    return true;
}

std::vector<BigInt> moebius_values(const std::vector<Flat>& lattice) {
    std::vector<BigInt> mu(lattice.size(), 0);
    // lattice is sorted by rank, so all Y < X precede X
    for (size_t i = 0; i < lattice.size(); ++i) {
        if (lattice[i].rank == 0) {
            mu[i] = 1;
            continue;
        }
        BigInt s = 0;
        for (size_t k = 0; k < i; ++k) {
            const Flat& y = lattice[k];
            if (y.rank >= lattice[i].rank) continue;
            if (std::includes(lattice[i].jset.begin(), lattice[i].jset.end(), y.jset.begin(), y.jset.end()))
                s += mu[k];
        }
        mu[i] = -s;
    }
    return mu;
}

Poly characteristic_polynomial(const Arrangement& a, const std::vector<Flat>& lattice) {
    std::vector<BigInt> mu = moebius_values(lattice);
    Poly chi(1);
    for (size_t i = 0; i < lattice.size(); ++i) {
        ExpVec e{static_cast<uint32_t>(a.n - lattice[i].rank)};
        chi.add_term(e, Rational(mu[i]));
    }
    return chi;
}

} // namespace arrbs
