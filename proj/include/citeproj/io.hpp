#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace citeproj {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io {

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline bool has_whitespace(std::string_view token) {
    for (char c : token)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')
            return true;
    return false;
}

[[noreturn]] inline void fail_at(const std::string& source, std::size_t line_no,
                                 const std::string& message) {
    throw ParseError(source + ":" + std::to_string(line_no) + ": " + message);
}

inline int parse_int(std::string_view token, const std::string& source, std::size_t line_no,
                     const char* what) {
    int value = 0;
    bool negative = false;
    std::size_t i = 0;
    if (!token.empty() && (token[0] == '-' || token[0] == '+')) {
        negative = token[0] == '-';
        i = 1;
    }
    if (i == token.size()) fail_at(source, line_no, std::string("missing ") + what);
    for (; i < token.size(); ++i) {
        char c = token[i];
        if (c < '0' || c > '9')
            fail_at(source, line_no, std::string("invalid ") + what + " '" + std::string(token) + "'");
        value = value * 10 + (c - '0');
        if (value > 1000000) fail_at(source, line_no, std::string(what) + " out of range");
    }
    return negative ? -value : value;
}

// 6 significant digits, the precision used for all CSV floating-point output.
inline std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string format_g(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::ifstream open_input(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + what + " file '" + path + "'");
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace io
} // namespace citeproj
