#include "ipl/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ipl {

namespace {

double pythag(double a, double b) {
    return std::hypot(a, b);
}

// Sort ascending, re-orthonormalize clusters of numerically degenerate
// values, then fix each vector's sign.
void finalize(EigenSolution& sol, double scale) {
    const int n = sol.n;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int a, int b) { return sol.values[a] < sol.values[b]; });

    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = sol.values[perm[i]];
    sol.values = std::move(vals);

    if (!sol.has_vectors()) return;

    std::vector<double> vecs(sol.vectors.size());
    for (int i = 0; i < n; ++i)
        std::copy_n(sol.vectors.data() + static_cast<std::size_t>(perm[i]) * n, n,
                    vecs.data() + static_cast<std::size_t>(i) * n);
    sol.vectors = std::move(vecs);

    // modified Gram-Schmidt inside degenerate clusters
    const double tol = 1e-12 * scale;
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && sol.values[j] - sol.values[j - 1] < tol) ++j;
        for (int a = i; a < j; ++a) {
            double* va = sol.vectors.data() + static_cast<std::size_t>(a) * n;
            for (int b = i; b < a; ++b) {
                const double* vb = sol.vectors.data() + static_cast<std::size_t>(b) * n;
                double dot = 0.0;
                for (int k = 0; k < n; ++k) dot += va[k] * vb[k];
                for (int k = 0; k < n; ++k) va[k] -= dot * vb[k];
            }
            double nrm = 0.0;
            for (int k = 0; k < n; ++k) nrm += va[k] * va[k];
            nrm = std::sqrt(nrm);
            if (nrm > 0.0)
                for (int k = 0; k < n; ++k) va[k] /= nrm;
        }
        i = j;
    }

    for (int v = 0; v < n; ++v) {
        double* col = sol.vectors.data() + static_cast<std::size_t>(v) * n;
        int imax = 0;
        for (int k = 1; k < n; ++k)
            if (std::fabs(col[k]) > std::fabs(col[imax])) imax = k;
        if (col[imax] < 0.0)
            for (int k = 0; k < n; ++k) col[k] = -col[k];
    }
}

} // namespace

EigenSolution eigh_tridiagonal(std::span<const double> diag, std::span<const double> offdiag,
                               bool want_vectors) {
    const int n = static_cast<int>(diag.size());
    if (n < 1) throw std::invalid_argument("eigh_tridiagonal: empty matrix");
    if (static_cast<int>(offdiag.size()) != std::max(0, n - 1))
        throw std::invalid_argument("eigh_tridiagonal: offdiag size must be n-1");

    EigenSolution sol;
    sol.n = n;
    sol.values.assign(diag.begin(), diag.end());
    std::vector<double> e(offdiag.begin(), offdiag.end());
    e.push_back(0.0);

    if (want_vectors) {
        sol.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) sol.vectors[static_cast<std::size_t>(i) * n + i] = 1.0;
    }
    double* z = sol.vectors.data(); // column v of the accumulated rotation is vector v

    std::vector<double>& d = sol.values;
    double frob = 0.0;
    for (int i = 0; i < n; ++i) frob += d[i] * d[i];
    for (int i = 0; i + 1 < n; ++i) frob += 2.0 * e[i] * e[i];
    frob = std::sqrt(frob);

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw ConvergenceError(l);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (want_vectors) {
                        double* zi = z + static_cast<std::size_t>(i) * n;
                        double* zi1 = zi + n;
                        for (int k = 0; k < n; ++k) {
                            f = zi1[k];
                            zi1[k] = s * zi[k] + c * f;
                            zi[k] = c * zi[k] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    finalize(sol, frob);
    return sol;
}

EigenSolution eigh_tridiagonal(const Hamiltonian& h, bool want_vectors) {
    return eigh_tridiagonal(h.diag, h.offdiag, want_vectors);
}

EigenSolution jacobi_dense(const Matrix& m) {
    const int n = m.size();
    if (n < 1) throw std::invalid_argument("jacobi_dense: empty matrix");
    if (n > 512) throw std::invalid_argument("jacobi_dense: size guard (n <= 512) violated");

    Matrix a = m;
    Matrix v = Matrix::identity(n);

    double frob = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
    frob = std::sqrt(frob);
    const double target = 1e-14 * frob;

    auto offnorm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && offnorm() > target; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    EigenSolution sol;
    sol.n = n;
    sol.values.resize(n);
    sol.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        sol.values[i] = a(i, i);
        for (int k = 0; k < n; ++k)
            sol.vectors[static_cast<std::size_t>(i) * n + k] = v(k, i);
    }
    finalize(sol, frob);
    return sol;
}

} // namespace ipl
