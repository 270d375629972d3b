#include "padicsub/wavelet.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace padicsub {

namespace {

using Cpx = std::complex<double>;

Eigen::MatrixXcd dft_matrix(long L) {
    Eigen::MatrixXcd F(L, L);
    double scale = 1.0 / std::sqrt(static_cast<double>(L));
    for (long w = 0; w < L; ++w)
        for (long m = 0; m < L; ++m)
            F(w, m) = std::polar(scale, -2.0 * M_PI * static_cast<double>(w * m) /
                                            static_cast<double>(L));
    return F;
}

}  // namespace

ComplexVector mask_coefficient_vector(const Mask& m) {
    long L = m.grid_size();
    ComplexVector h(static_cast<std::size_t>(L), Cpx{0.0, 0.0});
    for (long k = 0; k < L; ++k) h[static_cast<std::size_t>(k)] = m.at(m.grid_point(k)).to_complex();
    return h;
}

Eigen::MatrixXcd build_U(const ComplexVector& h, const std::vector<ComplexVector>& wavelets) {
    long L = static_cast<long>(h.size());
    long p = static_cast<long>(wavelets.size()) + 1;
    // L must be p^{N+1} for some N >= 0
    long shifts = L / p;
    {
        long t = L;
        while (t > 1 && t % p == 0) t /= p;
        if (t != 1 || L < p)
            throw std::invalid_argument("vector length is not a power of p matching the family");
    }
    for (const auto& wv : wavelets)
        if (static_cast<long>(wv.size()) != L)
            throw std::invalid_argument("wavelet vector length mismatch");

    double scale = 1.0 / std::sqrt(static_cast<double>(p));
    Eigen::MatrixXcd U(L, L);
    auto put = [&](long col, const ComplexVector& v, long shift) {
        for (long i = 0; i < L; ++i)
            U(i, col) = scale * v[static_cast<std::size_t>(((i - shift) % L + L) % L)];
    };
    long col = 0;
    for (long a = 0; a < shifts; ++a) put(col++, h, a);
    for (const auto& wv : wavelets)
        for (long a = 0; a < shifts; ++a) put(col++, wv, a);
    return U;
}

UnitarityReport verify_unitary(const Eigen::MatrixXcd& U, double tol) {
    if (U.rows() != U.cols()) throw std::invalid_argument("matrix must be square");
    Eigen::MatrixXcd G = U.adjoint() * U;
    G -= Eigen::MatrixXcd::Identity(U.rows(), U.cols());
    UnitarityReport r;
    r.tol = tol;
    r.max_deviation = G.size() == 0 ? 0.0 : G.cwiseAbs().maxCoeff();
    r.pass = r.max_deviation <= tol;
    return r;
}

WaveletMasks complete_masks(const Mask& m) {
    PrecheckReport pre = orthonormality_precheck(m);
    if (!pre.pass)
        throw std::invalid_argument("mask fails the orthonormality pre-check; cannot complete");

    long p = m.prime();
    long L = m.grid_size();
    long n = L / p;  // shifts per family

    ComplexVector h = mask_coefficient_vector(m);
    Eigen::VectorXcd hvec(L);
    double scale = 1.0 / std::sqrt(static_cast<double>(p));
    for (long i = 0; i < L; ++i) hvec(i) = scale * h[static_cast<std::size_t>(i)];

    Eigen::MatrixXcd F = dft_matrix(L);
    Eigen::VectorXcd spectrum = F * hvec;

    // The pre-check pins |spectrum| to 1/sqrt(n) on the multiples of p and 0
    // elsewhere. Block b holds frequencies {pb, pb+1, ..., pb+p-1}; the
    // scaling mask occupies slot 0 of every block, and slot t of every block
    // is handed to wavelet t.
    double amp = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<ComplexVector> wavelets;
    for (long j = 1; j < p; ++j) {
        Eigen::VectorXcd wspec = Eigen::VectorXcd::Zero(L);
        for (long b = 0; b < n; ++b) wspec(p * b + j) = amp;
        Eigen::VectorXcd wvec = F.adjoint() * wspec;
        ComplexVector wj(static_cast<std::size_t>(L));
        for (long i = 0; i < L; ++i)
            wj[static_cast<std::size_t>(i)] = wvec(i) / scale;  // back to raw coefficients
        // fix the free phase: first nonzero entry real positive
        for (const Cpx& z : wj) {
            if (std::abs(z) > 1e-9) {
                Cpx rot = std::conj(z) / std::abs(z);
                for (Cpx& y : wj) y *= rot;
                break;
            }
        }
        for (Cpx& y : wj) {  // flush arithmetic dust from the transform pair
            if (std::abs(y.real()) < 1e-12) y.real(0.0);
            if (std::abs(y.imag()) < 1e-12) y.imag(0.0);
        }
        wavelets.push_back(std::move(wj));
    }

    WaveletMasks out{m, std::move(wavelets), ShiftFrame{p, m.order()}};
    UnitarityReport rep = verify_unitary(build_U(h, out.wavelets), 1e-9);
    if (!rep.pass)
        throw std::runtime_error("wavelet completion residual " +
                                 std::to_string(rep.max_deviation) + " exceeds 1e-9");
    return out;
}

BallStepFunction wavelet_cascade(const Mask& m, const WaveletMasks& w, long j, long n,
                                 std::size_t cell_budget) {
    if (j < 1 || j > m.prime() - 1) throw std::invalid_argument("wavelet index out of range");
    const ComplexVector& hj = w.wavelets[static_cast<std::size_t>(j - 1)];
    BallStepFunction f = cascade_iterate(m, n, cell_budget);
    std::size_t worst = f.cell_count() * hj.size();
    if (worst > cell_budget) throw CellBudgetExceeded(cell_budget, worst);
    BallStepFunction out(m.prime(), f.level() + 1);
    mpq_class p(m.prime());
    long L = m.grid_size();
    for (long k = 0; k < L; ++k) {
        Cpx c = hj[static_cast<std::size_t>(k)];
        if (c == Cpx{0.0, 0.0}) continue;
        GaussianRational coeff{mpq_class(c.real()), mpq_class(c.imag())};
        mpq_class shift = m.grid_point(k).value();
        for (const auto& [center, v] : f.cells()) out.add_cell(p * (center + shift), coeff * v);
    }
    return out;
}

std::string wavelet_mask_to_json(const WaveletMasks& w, long j) {
    if (j < 1 || j > w.frame.p - 1) throw std::invalid_argument("wavelet index out of range");
    const ComplexVector& hj = w.wavelets[static_cast<std::size_t>(j - 1)];
    // hand-rolled dump: coefficient values as decimal floats with 17
    // significant digits
    auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };
    std::string out = "{\n  \"p\": " + std::to_string(w.frame.p) +
                      ",\n  \"N\": " + std::to_string(w.frame.order) +
                      ",\n  \"inexact\": true,\n  \"coefficients\": [";
    bool first = true;
    for (std::size_t k = 0; k < hj.size(); ++k) {
        if (std::abs(hj[k]) == 0.0) continue;
        out += first ? "\n" : ",\n";
        first = false;
        out += "    {\"k\": " + std::to_string(k) + ", \"re\": " + num(hj[k].real());
        if (hj[k].imag() != 0.0) out += ", \"im\": " + num(hj[k].imag());
        out += "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

}  // namespace padicsub
