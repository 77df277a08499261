#pragma once

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "oolct/grid.hpp"

namespace oolct {

struct file_format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trippable decimal representation of a double.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// OOS1 field container: "OOS1" magic, u32 version = 1, u32 n1 n2 n3,
// f64 x0[3], f64 dx[3], then 8 * n1*n2*n3 f64 samples, component-major
// (full s0 volume first), each volume row-major with the third axis
// fastest.  Little-endian throughout.
inline constexpr std::size_t kOos1HeaderBytes = 4 + 4 + 3 * 4 + 3 * 8 + 3 * 8;

static_assert(std::endian::native == std::endian::little,
              "OOS1 serialization assumes a little-endian host");

inline void write_oos1(const std::filesystem::path& path, const OctField3D& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw file_format_error("cannot open for writing: " + path.string());
    out.write("OOS1", 4);
    const std::uint32_t version = 1;
    out.write(reinterpret_cast<const char*>(&version), 4);
    for (int k = 0; k < 3; ++k) {
        const std::uint32_t n = std::uint32_t(f.grid.n(k));
        out.write(reinterpret_cast<const char*>(&n), 4);
    }
    for (int k = 0; k < 3; ++k) {
        const double x0 = f.grid.axes[k].x0;
        out.write(reinterpret_cast<const char*>(&x0), 8);
    }
    for (int k = 0; k < 3; ++k) {
        const double dx = f.grid.axes[k].dx;
        out.write(reinterpret_cast<const char*>(&dx), 8);
    }
    for (const auto& c : f.comp)
        out.write(reinterpret_cast<const char*>(c.data()), std::streamsize(c.size() * 8));
    if (!out) throw file_format_error("write failed: " + path.string());
}

inline OctField3D read_oos1(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw file_format_error("cannot open: " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "OOS1", 4) != 0)
        throw file_format_error(path.string() + ": bad magic, not an OOS1 file");
    std::uint32_t version = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    if (!in || version != 1)
        throw file_format_error(path.string() + ": unsupported version " + std::to_string(version));

    std::uint32_t n[3];
    double x0[3], dx[3];
    in.read(reinterpret_cast<char*>(n), 12);
    in.read(reinterpret_cast<char*>(x0), 24);
    in.read(reinterpret_cast<char*>(dx), 24);
    if (!in) throw file_format_error(path.string() + ": truncated header");

    Grid3D grid;
    for (int k = 0; k < 3; ++k) {
        const char axis_name[3] = {char('1' + k), 0, 0};
        if (n[k] < 2 || n[k] % 2 != 0 || n[k] > (1u << 24))
            throw file_format_error(path.string() + ": axis " + axis_name +
                                    ": n must be even and >= 2");
        if (!std::isfinite(dx[k]) || dx[k] <= 0.0)
            throw file_format_error(path.string() + ": axis " + axis_name + ": invalid spacing");
        grid.axes[k] = Grid1D::centered(int(n[k]), dx[k]);
        if (!std::isfinite(x0[k]) || std::abs(x0[k] - grid.axes[k].x0) > 1e-9 * dx[k])
            throw file_format_error(path.string() + ": axis " + axis_name +
                                    ": origin is not half-sample centered");
    }

    OctField3D f = OctField3D::zeros(grid);
    for (auto& c : f.comp) {
        in.read(reinterpret_cast<char*>(c.data()), std::streamsize(c.size() * 8));
        if (!in) throw file_format_error(path.string() + ": truncated payload");
    }
    char extra;
    if (in.read(&extra, 1))
        throw file_format_error(path.string() + ": trailing bytes after payload");
    for (const auto& c : f.comp)
        for (double v : c)
            if (!std::isfinite(v)) throw file_format_error(path.string() + ": non-finite sample");
    return f;
}

}  // namespace oolct
