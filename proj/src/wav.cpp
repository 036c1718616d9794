#include "dronevoc/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "dronevoc/errors.hpp"

namespace dronevoc {

namespace {

void put_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(static_cast<std::uint8_t>(x & 0xff));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
}

void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) v.push_back(static_cast<std::uint8_t>((x >> (8 * i)) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& v, const char* tag) {
    v.insert(v.end(), tag, tag + 4);
}

constexpr const char* kHashKey = "config_hash=";

}  // namespace

void write_wav(const std::string& path, const AudioBuffer& buffer,
               const std::string& config_hash) {
    if (buffer.sample_rate <= 0.0) throw ValidationError("audio buffer has no sample rate");
    const std::uint32_t rate = static_cast<std::uint32_t>(std::llround(buffer.sample_rate));

    std::vector<std::uint8_t> info;
    if (!config_hash.empty()) {
        std::string comment = std::string(kHashKey) + config_hash;
        comment.push_back('\0');
        if (comment.size() % 2 != 0) comment.push_back('\0');
        put_tag(info, "LIST");
        put_u32(info, static_cast<std::uint32_t>(4 + 8 + comment.size()));
        put_tag(info, "INFO");
        put_tag(info, "ICMT");
        put_u32(info, static_cast<std::uint32_t>(comment.size()));
        info.insert(info.end(), comment.begin(), comment.end());
    }

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(2 * buffer.samples.size());
    std::vector<std::uint8_t> out;
    out.reserve(44 + info.size() + data_bytes);
    put_tag(out, "RIFF");
    put_u32(out, static_cast<std::uint32_t>(4 + 24 + info.size() + 8 + data_bytes));
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, 1);  // PCM
    put_u16(out, 1);  // mono
    put_u32(out, rate);
    put_u32(out, rate * 2);  // byte rate
    put_u16(out, 2);         // block align
    put_u16(out, 16);        // bits per sample
    out.insert(out.end(), info.begin(), info.end());
    put_tag(out, "data");
    put_u32(out, data_bytes);
    for (double s : buffer.samples) {
        const double clamped = std::clamp(s, -1.0, 1.0);
        const long code = std::lround(clamped * 32767.0);
        const std::int16_t q = static_cast<std::int16_t>(std::clamp(code, -32768L, 32767L));
        const std::uint16_t u = static_cast<std::uint16_t>(q);
        out.push_back(static_cast<std::uint8_t>(u & 0xff));
        out.push_back(static_cast<std::uint8_t>(u >> 8));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw ValidationError("write failed: " + path);
}

namespace {

struct Cursor {
    const std::uint8_t* p;
    std::size_t n;
    std::size_t off = 0;

    void need(std::size_t k, const char* what) const {
        if (off + k > n) throw ValidationError(std::string("truncated WAV: ") + what);
    }
    std::uint16_t u16() {
        need(2, "u16");
        std::uint16_t x = static_cast<std::uint16_t>(p[off] | (p[off + 1] << 8));
        off += 2;
        return x;
    }
    std::uint32_t u32() {
        need(4, "u32");
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(p[off + static_cast<std::size_t>(i)]) << (8 * i);
        off += 4;
        return x;
    }
    std::string tag() {
        need(4, "chunk tag");
        std::string t(reinterpret_cast<const char*>(p + off), 4);
        off += 4;
        return t;
    }
    void skip(std::size_t k, const char* what) {
        need(k, what);
        off += k;
    }
};

}  // namespace

WavData read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    Cursor c{bytes.data(), bytes.size()};

    if (c.tag() != "RIFF") throw ValidationError("not a RIFF file: " + path);
    c.u32();  // declared size; trust actual file length instead
    if (c.tag() != "WAVE") throw ValidationError("not a WAVE file: " + path);

    WavData out;
    bool have_fmt = false;
    bool have_data = false;
    while (c.off + 8 <= c.n) {
        const std::string id = c.tag();
        const std::uint32_t size = c.u32();
        const std::size_t body = c.off;
        c.need(size, "chunk body");
        if (id == "fmt ") {
            if (size < 16) throw ValidationError("fmt chunk too short");
            const std::uint16_t format = c.u16();
            const std::uint16_t channels = c.u16();
            const std::uint32_t rate = c.u32();
            c.u32();
            c.u16();
            const std::uint16_t bits = c.u16();
            if (format != 1 || bits != 16) {
                throw ValidationError("unsupported WAV format: only 16-bit PCM is readable");
            }
            if (channels != 1) throw ValidationError("unsupported WAV format: only mono is readable");
            out.sample_rate = static_cast<double>(rate);
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) throw ValidationError("data chunk precedes fmt chunk");
            if (size % 2 != 0) throw ValidationError("data chunk has odd byte count");
            const std::size_t count = size / 2;
            out.samples.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                const std::uint16_t u = static_cast<std::uint16_t>(
                    c.p[body + 2 * i] | (c.p[body + 2 * i + 1] << 8));
                out.samples[i] = static_cast<double>(static_cast<std::int16_t>(u)) / 32767.0;
            }
            have_data = true;
        } else if (id == "LIST" && size >= 4) {
            const std::string kind = c.tag();
            std::size_t remaining = size - 4;
            if (kind == "INFO") {
                while (remaining >= 8) {
                    const std::string sub = c.tag();
                    const std::uint32_t sub_size = c.u32();
                    remaining -= 8;
                    if (sub_size > remaining) throw ValidationError("truncated INFO chunk");
                    if (sub == "ICMT") {
                        std::string text(reinterpret_cast<const char*>(c.p + c.off), sub_size);
                        const std::size_t nul = text.find('\0');
                        if (nul != std::string::npos) text.resize(nul);
                        if (text.rfind(kHashKey, 0) == 0) {
                            out.config_hash = text.substr(std::strlen(kHashKey));
                        }
                    }
                    const std::size_t advance = sub_size + (sub_size % 2);
                    c.skip(std::min(advance, remaining), "INFO body");
                    remaining -= std::min(advance, remaining);
                }
            }
        }
        // Position past the chunk body plus pad byte regardless of chunk type.
        c.off = body + size;
        if (size % 2 == 1 && c.off < c.n) ++c.off;
    }
    if (!have_fmt) throw ValidationError("missing fmt chunk: " + path);
    if (!have_data) throw ValidationError("missing data chunk: " + path);
    return out;
}

}  // namespace dronevoc
