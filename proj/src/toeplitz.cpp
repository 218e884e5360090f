#include "nlfem/toeplitz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace nlfem {

namespace {

// the FFTW planner is not thread safe
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

} // namespace

struct BlockToeplitzOperator::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Plans()
    {
        std::lock_guard lock(planner_mutex());
        if (forward)
            fftw_destroy_plan(forward);
        if (backward)
            fftw_destroy_plan(backward);
    }
};

BlockToeplitzOperator::Workspace::Workspace(std::size_t real_size, std::size_t complex_size)
{
    real = fftw_alloc_real(real_size);
    spec = fftw_alloc_complex(complex_size);
    if (!real || !spec) {
        fftw_free(real);
        fftw_free(spec);
        throw std::bad_alloc();
    }
}

BlockToeplitzOperator::Workspace::Workspace(Workspace&& o) noexcept
    : real(std::exchange(o.real, nullptr)), spec(std::exchange(o.spec, nullptr))
{
}

BlockToeplitzOperator::Workspace& BlockToeplitzOperator::Workspace::operator=(Workspace&& o) noexcept
{
    std::swap(real, o.real);
    std::swap(spec, o.spec);
    return *this;
}

BlockToeplitzOperator::Workspace::~Workspace()
{
    fftw_free(real);
    fftw_free(spec);
}

int fft_friendly_size(int n)
{
    for (int m = std::max(n, 1);; ++m) {
        int r = m;
        for (int p : {2, 3, 5})
            while (r % p == 0)
                r /= p;
        if (r == 1)
            return m;
    }
}

BlockToeplitzOperator::BlockToeplitzOperator(const GeneratingTensor& G, std::vector<int> dims,
                                             std::vector<int> min_padding)
    : dims_(std::move(dims))
{
    const int d = G.d();
    if (static_cast<int>(dims_.size()) != d)
        throw std::invalid_argument("build_operator: dims must have one entry per dimension");
    if (!min_padding.empty() && static_cast<int>(min_padding.size()) != d)
        throw std::invalid_argument("build_operator: min_padding size mismatch");
    for (int n : dims_)
        if (n < 1)
            throw std::invalid_argument("build_operator: grid sizes must be positive");

    size_ = 1;
    real_size_ = 1;
    padded_.resize(d);
    std::vector<int> reach(d);
    for (int j = 0; j < d; ++j) {
        reach[j] = std::min(G.band(), dims_[j]);
        int need = dims_[j] + reach[j] - 1;
        if (!min_padding.empty())
            need = std::max(need, min_padding[j]);
        padded_[j] = fft_friendly_size(need);
        size_ *= dims_[j];
        real_size_ *= padded_[j];
    }
    complex_size_ = real_size_ / padded_[0] * (padded_[0] / 2 + 1);
    flops_ = 5.0 * static_cast<double>(real_size_) * std::log2(static_cast<double>(real_size_));

    Workspace ws(real_size_, complex_size_);
    auto* cplx = static_cast<fftw_complex*>(ws.spec);
    // fftw is row-major: reverse the dimension order so index 0 runs fastest
    std::vector<int> n_rev(dims_.size());
    for (int j = 0; j < d; ++j)
        n_rev[j] = padded_[d - 1 - j];

    plans_ = std::make_unique<Plans>();
    {
        std::lock_guard lock(planner_mutex());
        plans_->forward = fftw_plan_dft_r2c(d, n_rev.data(), ws.real, cplx, FFTW_ESTIMATE);
        plans_->backward = fftw_plan_dft_c2r(d, n_rev.data(), cplx, ws.real, FFTW_ESTIMATE);
    }
    if (!plans_->forward || !plans_->backward)
        throw std::runtime_error("build_operator: FFTW planning failed");

    // first column of the embedded circulant: t_{|k|} at wrapped offsets
    auto wrap = [&](int i, int j) {
        const int P = padded_[j];
        if (i < reach[j])
            return i;
        if (P - i < reach[j])
            return P - i;
        return -1;
    };
    const int P0 = padded_[0], P1 = padded_[1], P2 = d == 3 ? padded_[2] : 1;
    std::fill(ws.real, ws.real + real_size_, 0.0);
    for (int i2 = 0; i2 < P2; ++i2) {
        const int k2 = d == 3 ? wrap(i2, 2) : 0;
        if (k2 < 0)
            continue;
        for (int i1 = 0; i1 < P1; ++i1) {
            const int k1 = wrap(i1, 1);
            if (k1 < 0)
                continue;
            for (int i0 = 0; i0 < P0; ++i0) {
                const int k0 = wrap(i0, 0);
                if (k0 < 0)
                    continue;
                ws.real[i0 + static_cast<std::size_t>(P0) * (i1 + static_cast<std::size_t>(P1) * i2)] =
                    G.at(k0, k1, k2);
            }
        }
    }
    fftw_execute_dft_r2c(plans_->forward, ws.real, cplx);

    // the embedded column is even in every index, so its transform is real
    symbol_.resize(complex_size_);
    double max_re = 0.0, max_im = 0.0;
    const double scale = 1.0 / static_cast<double>(real_size_);
    for (std::size_t i = 0; i < complex_size_; ++i) {
        max_re = std::max(max_re, std::abs(cplx[i][0]));
        max_im = std::max(max_im, std::abs(cplx[i][1]));
        symbol_[i] = cplx[i][0] * scale;
    }
    if (max_im > 1e-12 * std::max(max_re, 1e-300))
        throw std::logic_error("build_operator: embedded symbol is not real");
}

BlockToeplitzOperator::BlockToeplitzOperator(BlockToeplitzOperator&&) noexcept = default;
BlockToeplitzOperator& BlockToeplitzOperator::operator=(BlockToeplitzOperator&&) noexcept = default;
BlockToeplitzOperator::~BlockToeplitzOperator() = default;

BlockToeplitzOperator::Workspace BlockToeplitzOperator::make_workspace() const
{
    return Workspace(real_size_, complex_size_);
}

void BlockToeplitzOperator::apply(std::span<const double> in, std::span<double> out,
                                  Workspace& ws) const
{
    if (in.size() != size_ || out.size() != size_)
        throw std::invalid_argument("matvec: vector length does not match the grid");
    const int d = this->d();
    const std::size_t N0 = dims_[0], N1 = dims_[1], N2 = d == 3 ? dims_[2] : 1;
    const std::size_t P0 = padded_[0], P1 = padded_[1];

    std::fill(ws.real, ws.real + real_size_, 0.0);
    for (std::size_t i2 = 0; i2 < N2; ++i2)
        for (std::size_t i1 = 0; i1 < N1; ++i1)
            std::memcpy(ws.real + P0 * (i1 + P1 * i2), in.data() + N0 * (i1 + N1 * i2),
                        N0 * sizeof(double));

    auto* cplx = static_cast<fftw_complex*>(ws.spec);
    fftw_execute_dft_r2c(plans_->forward, ws.real, cplx);
    for (std::size_t i = 0; i < complex_size_; ++i) {
        cplx[i][0] *= symbol_[i];
        cplx[i][1] *= symbol_[i];
    }
    fftw_execute_dft_c2r(plans_->backward, cplx, ws.real);

    for (std::size_t i2 = 0; i2 < N2; ++i2)
        for (std::size_t i1 = 0; i1 < N1; ++i1)
            std::memcpy(out.data() + N0 * (i1 + N1 * i2), ws.real + P0 * (i1 + P1 * i2),
                        N0 * sizeof(double));
}

GridVector BlockToeplitzOperator::operator()(std::span<const double> in) const
{
    auto ws = make_workspace();
    GridVector out(size_);
    apply(in, out, ws);
    return out;
}

BlockToeplitzOperator build_operator(const GeneratingTensor& G, std::vector<int> dims,
                                     std::vector<int> min_padding)
{
    return BlockToeplitzOperator(G, std::move(dims), std::move(min_padding));
}

GridVector matvec(const BlockToeplitzOperator& op, std::span<const double> v)
{
    return op(v);
}

DenseMatrix materialize_dense(const GeneratingTensor& G, const std::vector<int>& dims)
{
    const int d = G.d();
    if (static_cast<int>(dims.size()) != d)
        throw std::invalid_argument("materialize_dense: dims must have one entry per dimension");
    std::size_t n = 1;
    for (int v : dims) {
        if (v < 1)
            throw std::invalid_argument("materialize_dense: grid sizes must be positive");
        n *= v;
    }
    if (n > 4096)
        throw std::length_error("materialize_dense: more than 4096 unknowns");

    auto multi = [&](std::size_t l) {
        std::array<int, 3> m{0, 0, 0};
        for (int j = 0; j < d; ++j) {
            m[j] = static_cast<int>(l % dims[j]);
            l /= dims[j];
        }
        return m;
    };
    DenseMatrix M;
    M.n = n;
    M.a.resize(n * n);
    for (std::size_t l = 0; l < n; ++l) {
        const auto a = multi(l);
        for (std::size_t lp = 0; lp < n; ++lp) {
            const auto b = multi(lp);
            M.a[l * n + lp] = G.at(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
        }
    }
    return M;
}

void write_dense_csv(const DenseMatrix& m, std::ostream& os)
{
    os << std::setprecision(17);
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j)
            os << (j ? "," : "") << m(i, j);
        os << '\n';
    }
}

} // namespace nlfem
