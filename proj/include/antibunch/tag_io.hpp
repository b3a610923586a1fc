// Binary tag-file format ("QTAG"):
//   header, 24 bytes: magic 0x51 0x54 0x41 0x47, u32 LE version = 1,
//   u64 LE record_count, u64 LE duration_ps
//   then record_count records of 16 bytes: u64 LE timestamp_ps,
//   u32 LE channel, u32 LE flags = 0. Records sorted by timestamp.
// Writes are whole-file atomic (temp file + rename).

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "antibunch/errors.hpp"
#include "antibunch/tag_stream.hpp"

namespace antibunch {

inline constexpr uint32_t kTagFormatVersion = 1;
inline constexpr char kTagMagic[4] = {0x51, 0x54, 0x41, 0x47};  // "QTAG"

namespace detail {

inline void put_u32le(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

inline void put_u64le(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xFF));
}

inline uint32_t get_u32le(const unsigned char* p) {
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

inline uint64_t get_u64le(const unsigned char* p) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace detail

inline void write_tags(const std::filesystem::path& path, const TagStream& stream) {
    if (!stream.sorted())
        throw ordering_error("write_tags: stream is not sorted");
    std::string buffer;
    buffer.reserve(24 + stream.records.size() * 16);
    buffer.append(kTagMagic, 4);
    detail::put_u32le(buffer, kTagFormatVersion);
    detail::put_u64le(buffer, stream.records.size());
    detail::put_u64le(buffer, stream.duration_ps);
    for (const auto& r : stream.records) {
        detail::put_u64le(buffer, r.timestamp_ps);
        detail::put_u32le(buffer, r.channel);
        detail::put_u32le(buffer, 0);  // flags
    }

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("write_tags: cannot open " + tmp.string());
        out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        if (!out) throw io_error("write_tags: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline TagStream read_tags(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("read_tags: cannot open " + path.string());

    unsigned char header[24];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (in.gcount() != sizeof(header))
        throw truncated_file_error("read_tags: file shorter than the 24-byte header");
    if (std::memcmp(header, kTagMagic, 4) != 0)
        throw bad_magic_error("read_tags: bad magic in " + path.string());
    const uint32_t version = detail::get_u32le(header + 4);
    if (version != kTagFormatVersion)
        throw bad_version_error("read_tags: unsupported version " +
                                std::to_string(version));
    const uint64_t record_count = detail::get_u64le(header + 8);
    const uint64_t duration_ps = detail::get_u64le(header + 16);

    const auto file_size = std::filesystem::file_size(path);
    if (file_size != 24 + record_count * 16)
        throw truncated_file_error("read_tags: header promises " +
                                   std::to_string(record_count) + " records but file has " +
                                   std::to_string((file_size - 24) / 16));

    TagStream stream;
    stream.duration_ps = duration_ps;
    stream.records.resize(record_count);
    std::vector<unsigned char> buf(16 * 4096);
    uint64_t done = 0;
    uint64_t prev_ts = 0;
    while (done < record_count) {
        const uint64_t batch = std::min<uint64_t>(4096, record_count - done);
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(16 * batch));
        if (in.gcount() != static_cast<std::streamsize>(16 * batch))
            throw truncated_file_error("read_tags: unexpected end of file");
        for (uint64_t i = 0; i < batch; ++i) {
            const unsigned char* p = buf.data() + 16 * i;
            TagRecord& r = stream.records[done + i];
            r.timestamp_ps = detail::get_u64le(p);
            r.channel = detail::get_u32le(p + 8);
            if (done + i > 0 && r.timestamp_ps < prev_ts)
                throw nonmonotone_error("read_tags: timestamps are not monotone at record " +
                                        std::to_string(done + i));
            prev_ts = r.timestamp_ps;
        }
        done += batch;
    }
    return stream;
}

}  // namespace antibunch
