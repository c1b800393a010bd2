#include "semzk/snapshot.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "semzk/error.hpp"

namespace semzk {

namespace {

constexpr std::array<char, 6> kMagic = {'S', 'E', 'M', 'Z', 'K', '1'};

template <class U>
void put_le(std::vector<unsigned char>& out, U v) {
    for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

template <class U>
U get_le(const unsigned char* p) {
    U v = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b) v |= static_cast<U>(p[b]) << (8 * b);
    return v;
}

void put_f64(std::vector<unsigned char>& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_le<std::uint64_t>(p)); }

bool valid_tag(unsigned char t) { return t <= static_cast<unsigned char>(Equation::Tag::linear); }

}  // namespace

void write_snapshot(const std::filesystem::path& path, const RealField& field, double time, Equation::Tag equation) {
    if (!field.all_finite()) throw Error("non-finite field");
    const Grid2D& g = field.grid();
    std::vector<unsigned char> bytes;
    bytes.reserve(kSnapshotHeaderBytes + 8 * g.size());
    bytes.insert(bytes.end(), kMagic.begin(), kMagic.end());
    put_le(bytes, kSnapshotVersion);
    put_le(bytes, static_cast<std::uint32_t>(g.nx()));
    put_le(bytes, static_cast<std::uint32_t>(g.ny()));
    put_f64(bytes, g.lx());
    put_f64(bytes, g.ly());
    put_f64(bytes, time);
    bytes.push_back(static_cast<unsigned char>(equation));
    for (double v : field.values()) put_f64(bytes, v);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write snapshot " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("cannot write snapshot " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open snapshot " + path.string());
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < kMagic.size() + 4) throw Error("truncated snapshot " + path.string());
    if (std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0 ||
        get_le<std::uint32_t>(bytes.data() + 6) != kSnapshotVersion) {
        throw Error("bad snapshot magic/version");
    }
    if (bytes.size() < kSnapshotHeaderBytes) throw Error("truncated snapshot " + path.string());
    const unsigned char* p = bytes.data();
    const std::uint32_t nx = get_le<std::uint32_t>(p + 10);
    const std::uint32_t ny = get_le<std::uint32_t>(p + 14);
    const double lx = get_f64(p + 18);
    const double ly = get_f64(p + 26);
    const double time = get_f64(p + 34);
    const unsigned char tag = p[42];
    if (!valid_tag(tag) || !std::isfinite(time) || nx > (1u << 16) || ny > (1u << 16)) {
        throw Error("corrupt snapshot header in " + path.string());
    }
    const Grid2D grid(static_cast<int>(nx), static_cast<int>(ny), lx, ly);
    const std::size_t expected = kSnapshotHeaderBytes + 8 * grid.size();
    if (bytes.size() < expected) throw Error("truncated snapshot " + path.string());
    if (bytes.size() > expected) throw Error("trailing bytes in snapshot " + path.string());
    std::vector<double> values(grid.size());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = get_f64(p + kSnapshotHeaderBytes + 8 * k);
    RealField field(grid, std::move(values));
    if (!field.all_finite()) throw Error("non-finite field");
    return {std::move(field), time, static_cast<Equation::Tag>(tag)};
}

}  // namespace semzk
