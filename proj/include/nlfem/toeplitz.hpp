#pragma once

#include "nlfem/gentensor.hpp"

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace nlfem {

using GridVector = std::vector<double>;  // column-major, first index fastest

struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major n x n

    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Multilevel symmetric Toeplitz operator applied through a d-level circulant
// embedding and real FFTs.
class BlockToeplitzOperator {
public:
    // Scratch buffers for one concurrent caller.
    class Workspace {
    public:
        Workspace() = default;
        Workspace(std::size_t real_size, std::size_t complex_size);
        Workspace(Workspace&&) noexcept;
        Workspace& operator=(Workspace&&) noexcept;
        ~Workspace();

        double* real = nullptr;
        void* spec = nullptr;  // fftw_complex*
    };

    BlockToeplitzOperator(const GeneratingTensor& G, std::vector<int> dims,
                          std::vector<int> min_padding = {});
    BlockToeplitzOperator(BlockToeplitzOperator&&) noexcept;
    BlockToeplitzOperator& operator=(BlockToeplitzOperator&&) noexcept;
    ~BlockToeplitzOperator();

    int d() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<int>& padded() const { return padded_; }
    std::size_t size() const { return size_; }
    // rough operation count of one application
    double flops() const { return flops_; }

    Workspace make_workspace() const;
    void apply(std::span<const double> in, std::span<double> out, Workspace& ws) const;
    GridVector operator()(std::span<const double> in) const;

private:
    struct Plans;

    std::vector<int> dims_;
    std::vector<int> padded_;
    std::size_t size_ = 0;
    std::size_t real_size_ = 0;
    std::size_t complex_size_ = 0;
    double flops_ = 0.0;
    std::vector<double> symbol_;
    std::unique_ptr<Plans> plans_;
};

// smallest 2^a 3^b 5^c >= n
int fft_friendly_size(int n);

BlockToeplitzOperator build_operator(const GeneratingTensor& G, std::vector<int> dims,
                                     std::vector<int> min_padding = {});

GridVector matvec(const BlockToeplitzOperator& op, std::span<const double> v);

// (l, l') entry t_{|n - m|}; refuses more than 4096 unknowns.
DenseMatrix materialize_dense(const GeneratingTensor& G, const std::vector<int>& dims);

void write_dense_csv(const DenseMatrix& m, std::ostream& os);

} // namespace nlfem
