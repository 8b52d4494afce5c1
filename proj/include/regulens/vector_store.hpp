#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace regulens {

// Binary chunk-vector store. Layout, all little-endian:
//   "RGVEC001" | u32 dim | u64 count | count x (u16 key_len, key, dim x f32)

inline constexpr char vector_store_magic[8] = {'R', 'G', 'V', 'E',
                                               'C', '0', '0', '1'};

struct VectorStore {
    std::uint32_t dim = 0;
    std::vector<std::pair<std::string, std::vector<float>>> records;
};

namespace detail {

inline void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

struct ByteReader {
    const std::string& data;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > data.size())
            throw std::runtime_error("truncated vector store");
    }
    std::uint8_t u8_at(std::size_t i) const {
        return static_cast<std::uint8_t>(data[i]);
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(
            u8_at(pos) | (u8_at(pos + 1) << 8));
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(u8_at(pos + i)) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(u8_at(pos + i)) << (8 * i);
        pos += 8;
        return v;
    }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s = data.substr(pos, n);
        pos += n;
        return s;
    }
};

} // namespace detail

inline void save_vectors(const std::filesystem::path& path,
                         const VectorStore& store) {
    if (store.dim == 0)
        throw std::runtime_error("vector store dim must be positive");
    std::string out;
    out.append(vector_store_magic, 8);
    detail::put_u32(out, store.dim);
    detail::put_u64(out, store.records.size());
    for (const auto& [key, values] : store.records) {
        if (key.size() > 0xFFFF)
            throw std::runtime_error("vector store key too long: " + key);
        if (values.size() != store.dim)
            throw std::runtime_error("vector store dim mismatch for key: " + key);
        detail::put_u16(out, static_cast<std::uint16_t>(key.size()));
        out.append(key);
        for (float f : values)
            detail::put_u32(out, std::bit_cast<std::uint32_t>(f));
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write: " + path.string());
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

inline VectorStore load_vectors(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("path not found: " + path.string());
    std::string data((std::istreambuf_iterator<char>(file)),
                     std::istreambuf_iterator<char>());
    detail::ByteReader r{data};
    if (r.bytes(8) != std::string(vector_store_magic, 8))
        throw std::runtime_error("bad vector-store magic");
    VectorStore store;
    store.dim = r.u32();
    if (store.dim == 0)
        throw std::runtime_error("vector store dim must be positive");
    std::uint64_t count = r.u64();
    store.records.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint16_t key_len = r.u16();
        std::string key = r.bytes(key_len);
        std::vector<float> values(store.dim);
        for (std::uint32_t j = 0; j < store.dim; ++j)
            values[j] = std::bit_cast<float>(r.u32());
        store.records.emplace_back(std::move(key), std::move(values));
    }
    return store;
}

} // namespace regulens
