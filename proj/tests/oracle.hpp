#ifndef SINGKIT_TESTS_ORACLE_HPP
#define SINGKIT_TESTS_ORACLE_HPP

// Independent reference computations: dense polynomials keyed by exponent
// vectors and plain Gaussian elimination. Shares no code with the library.

#include <gmpxx.h>

#include <map>
#include <vector>

namespace oracle {

using Exps = std::vector<int>;
using Poly = std::map<Exps, mpq_class>;

// Coefficients reduced into F_p when p > 0.
inline mpq_class normalize(const mpq_class& c, long p) {
    if (p == 0) return c;
    mpz_class num = c.get_num() % p, den = c.get_den() % p;
    if (num < 0) num += p;
    if (den < 0) den += p;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
    return mpq_class(mpz_class(num * inv % p));
}

inline Poly clean(const Poly& f, long p) {
    Poly out;
    for (const auto& [e, c] : f) {
        mpq_class v = normalize(c, p);
        if (v != 0) out[e] = v;
    }
    return out;
}

inline Poly derivative(const Poly& f, int var, long p) {
    Poly out;
    for (const auto& [e, c] : f) {
        if (e[var] == 0) continue;
        Exps d = e;
        --d[var];
        out[d] += c * e[var];
    }
    return clean(out, p);
}

inline int total(const Exps& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
}

inline std::vector<Exps> monomials_up_to(int n, int D) {
    std::vector<Exps> out;
    Exps e(n, 0);
    auto rec = [&](auto&& self, int k, int left) -> void {
        if (k == n) {
            out.push_back(e);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            e[k] = a;
            self(self, k + 1, left - a);
        }
        e[k] = 0;
    };
    rec(rec, 0, D);
    return out;
}

// dim k[x]_{<=D} / span{ m * g : g in gens, deg m <= D } with terms above D dropped.
inline int quotient_dim(const std::vector<Poly>& gens, int n, int D, long p) {
    auto monos = monomials_up_to(n, D);
    std::map<Exps, int> col;
    for (const auto& m : monos) col.emplace(m, static_cast<int>(col.size()));
    int cols = static_cast<int>(col.size());
    std::vector<std::vector<mpq_class>> rows;
    for (const auto& g : gens)
        for (const auto& m : monos) {
            std::vector<mpq_class> row(cols);
            bool any = false;
            for (const auto& [e, c] : g) {
                Exps s = e;
                for (int i = 0; i < n; ++i) s[i] += m[i];
                if (total(s) > D) continue;
                row[col[s]] = c;
                any = true;
            }
            if (any) rows.push_back(std::move(row));
        }
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (normalize(rows[r][c], p) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        for (auto& v : rows[rank]) v = normalize(v, p);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            mpq_class factor = normalize(rows[r][c] / rows[rank][c], p);
            if (factor == 0) continue;
            for (int k = 0; k < cols; ++k) rows[r][k] = normalize(rows[r][k] - factor * rows[rank][k], p);
        }
        ++rank;
    }
    return cols - rank;
}

// dim k[x] / ((f) + Jac f), at jet level D.
inline int tjurina(const Poly& f, int n, int D, long p = 0) {
    std::vector<Poly> gens{clean(f, p)};
    for (int i = 0; i < n; ++i) gens.push_back(derivative(f, i, p));
    return quotient_dim(gens, n, D, p);
}

}  // namespace oracle

#endif
