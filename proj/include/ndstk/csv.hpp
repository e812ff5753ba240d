#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndstk {

// Minimal RFC-4180 CSV writer: CRLF records, fields quoted when they contain
// commas, quotes, or line breaks.
class CsvWriter {
public:
    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) buffer_ += ',';
            buffer_ += quote(fields[i]);
        }
        buffer_ += "\r\n";
    }

    const std::string& str() const { return buffer_; }

    static std::string quote(const std::string& field) {
        bool needs = false;
        for (char c : field)
            if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
        if (!needs) return field;
        std::string out = "\"";
        for (char c : field) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

private:
    std::string buffer_;
};

// Atomic write: temp file in place, then rename over the target.
inline void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

}  // namespace ndstk
