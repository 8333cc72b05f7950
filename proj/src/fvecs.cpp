#include "vdt/fvecs.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace vdt {

namespace {

std::int32_t read_le_i32(std::istream& in) {
    unsigned char buf[4] = {0, 0, 0, 0};
    in.read(reinterpret_cast<char*>(buf), 4);
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(buf[0]) |
                                     (static_cast<std::uint32_t>(buf[1]) << 8) |
                                     (static_cast<std::uint32_t>(buf[2]) << 16) |
                                     (static_cast<std::uint32_t>(buf[3]) << 24));
}

float read_le_f32(std::istream& in) {
    const std::int32_t bits = read_le_i32(in);
    float out;
    std::memcpy(&out, &bits, 4);
    return out;
}

void write_le_i32(std::ostream& out, std::int32_t value) {
    const auto u = static_cast<std::uint32_t>(value);
    const unsigned char buf[4] = {
        static_cast<unsigned char>(u & 0xff), static_cast<unsigned char>((u >> 8) & 0xff),
        static_cast<unsigned char>((u >> 16) & 0xff), static_cast<unsigned char>((u >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

}  // namespace

VectorSet read_fvecs(std::istream& in, std::size_t head_limit) {
    VectorSet out;
    std::size_t record = 0;
    while (head_limit == 0 || record < head_limit) {
        const std::int32_t d = read_le_i32(in);
        if (in.eof() && in.gcount() == 0) break;  // clean end between records
        if (!in) throw std::runtime_error("fvecs: truncated record header at record " +
                                          std::to_string(record));
        if (d <= 0)
            throw std::runtime_error("fvecs: non-positive dimension at record " +
                                     std::to_string(record));
        if (record == 0) {
            out.dim = static_cast<std::size_t>(d);
        } else if (static_cast<std::size_t>(d) != out.dim) {
            throw std::runtime_error("fvecs: dimension mismatch at record " +
                                     std::to_string(record) + " (expected " +
                                     std::to_string(out.dim) + ", got " + std::to_string(d) + ")");
        }
        for (std::int32_t i = 0; i < d; ++i) {
            const float v = read_le_f32(in);
            if (!in) throw std::runtime_error("fvecs: truncated record payload at record " +
                                              std::to_string(record));
            out.data.push_back(v);
        }
        ++record;
    }
    return out;
}

VectorSet load_fvecs(const std::string& path, std::size_t head_limit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("fvecs: cannot open " + path);
    return read_fvecs(in, head_limit);
}

void write_fvecs(std::ostream& out, const VectorSet& vectors) {
    const auto d = static_cast<std::int32_t>(vectors.dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        write_le_i32(out, d);
        const auto row = vectors.row(i);
        for (float v : row) {
            std::int32_t bits;
            std::memcpy(&bits, &v, 4);
            write_le_i32(out, bits);
        }
    }
}

void write_fvecs(const std::string& path, const VectorSet& vectors) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("fvecs: cannot open " + path + " for writing");
    write_fvecs(out, vectors);
}

}  // namespace vdt
