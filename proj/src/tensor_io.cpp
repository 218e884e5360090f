#include "nlfem/gentensor.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nlfem {

namespace {

constexpr char magic[5] = {'N', 'L', 'G', 'T', '1'};

static_assert(std::endian::native == std::endian::little,
              "tensor cache I/O assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v)
{
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v)
{
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is)
{
    T v;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw std::runtime_error("tensor cache: truncated file");
    return v;
}

} // namespace

void save_tensor(const GeneratingTensor& t, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("tensor cache: cannot open '" + path + "' for writing");
    os.write(magic, sizeof magic);
    put_u32(os, static_cast<std::uint32_t>(t.d()));
    put_u32(os, static_cast<std::uint32_t>(t.grid_n()));
    put_u32(os, static_cast<std::uint32_t>(t.band()));
    put_f64(os, t.h());
    put_f64(os, t.kernel().delta);
    put_f64(os, t.kernel().alpha);
    put_f64(os, t.kernel().c);
    for (double v : t.entries())
        put_f64(os, v);
    if (!os)
        throw std::runtime_error("tensor cache: write failed for '" + path + "'");
}

GeneratingTensor load_tensor(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("tensor cache: cannot open '" + path + "'");
    char head[5];
    if (!is.read(head, sizeof head) || std::memcmp(head, magic, sizeof magic) != 0)
        throw std::runtime_error("tensor cache: bad magic in '" + path + "'");
    const auto d = get<std::uint32_t>(is);
    const auto N = get<std::uint32_t>(is);
    const auto B = get<std::uint32_t>(is);
    const double h = get<double>(is);
    const double delta = get<double>(is);
    const double alpha = get<double>(is);
    const double c = get<double>(is);
    if (d != 2 && d != 3)
        throw std::runtime_error("tensor cache: unsupported dimension");
    KernelSpec k;
    k.d = static_cast<int>(d);
    k.alpha = alpha;
    k.delta = delta;
    k.c = c;
    k.normalization = Normalization::Explicit;
    GeneratingTensor t(static_cast<int>(d), static_cast<int>(B), h, k, static_cast<int>(N));
    for (double& v : t.entries())
        v = get<double>(is);
    return t;
}

} // namespace nlfem
