// csv.hpp — Minimal CSV writer: RFC-4180-style quoting, LF line endings,
// %.12e numeric formatting. Output is bitwise deterministic for identical
// inputs.

#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapres {

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
    }

    void header(const std::vector<std::string>& names) {
        bool first = true;
        for (const auto& n : names) {
            if (!first) out_.put(',');
            write_quoted(n);
            first = false;
        }
        out_.put('\n');
    }

    void row(const std::vector<double>& values) {
        char buf[32];
        bool first = true;
        for (double v : values) {
            if (!first) out_.put(',');
            std::snprintf(buf, sizeof(buf), "%.12e", v);
            out_ << buf;
            first = false;
        }
        out_.put('\n');
    }

    void close() { out_.close(); }

private:
    void write_quoted(const std::string& s) {
        if (s.find_first_of(",\"\n\r") == std::string::npos) {
            out_ << s;
            return;
        }
        out_.put('"');
        for (char c : s) {
            if (c == '"') out_.put('"');
            out_.put(c);
        }
        out_.put('"');
    }

    std::ofstream out_;
};

} // namespace gapres
