#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "varfrac/grid_function.hpp"

namespace varfrac {

// Deterministic JSON emitter: insertion order is preserved and every
// floating-point value is serialized with 17 significant digits, so equal
// inputs produce byte-identical reports.
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& name) {
        separator();
        append_string(name);
        out_ += ':';
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double v) {
        separator();
        char buf[40];
        if (std::isfinite(v)) std::snprintf(buf, sizeof buf, "%.17g", v);
        else std::snprintf(buf, sizeof buf, "\"%s\"", v > 0 ? "inf" : (v < 0 ? "-inf" : "nan"));
        out_ += buf;
        return *this;
    }

    JsonWriter& value(long v) {
        separator();
        out_ += std::to_string(v);
        return *this;
    }
    JsonWriter& value(int v) { return value(static_cast<long>(v)); }
    JsonWriter& value(std::size_t v) {
        separator();
        out_ += std::to_string(v);
        return *this;
    }

    JsonWriter& value(bool v) {
        separator();
        out_ += v ? "true" : "false";
        return *this;
    }

    JsonWriter& value(const std::string& v) {
        separator();
        append_string(v);
        return *this;
    }
    JsonWriter& value(const char* v) { return value(std::string(v)); }

    JsonWriter& field(const std::string& name, double v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, long v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, int v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, std::size_t v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, bool v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, const std::string& v) { return key(name).value(v); }
    JsonWriter& field(const std::string& name, const char* v) { return key(name).value(v); }

    const std::string& str() const { return out_; }

    void write_file(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << out_ << "\n";
    }

private:
    JsonWriter& open(char c) {
        separator();
        out_ += c;
        depth_first_.push_back(true);
        return *this;
    }

    JsonWriter& close(char c) {
        out_ += c;
        depth_first_.pop_back();
        return *this;
    }

    void separator() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!depth_first_.empty()) {
            if (!depth_first_.back()) out_ += ',';
            depth_first_.back() = false;
        }
    }

    void append_string(const std::string& s) {
        out_ += '"';
        for (const char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default: out_ += c;
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<bool> depth_first_;
    bool pending_value_ = false;
};

inline void write_solution_csv(const GridFunction& u, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    const GridDomain& g = *u.grid;
    f << "index,x";
    if (g.dim == 2) f << ",y";
    f << ",value\n";
    char buf[96];
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        f << i;
        std::snprintf(buf, sizeof buf, ",%.17g", g.nodes[i][0]);
        f << buf;
        if (g.dim == 2) {
            std::snprintf(buf, sizeof buf, ",%.17g", g.nodes[i][1]);
            f << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.17g", u.values[i]);
        f << buf << "\n";
    }
}

inline void write_samples_csv(const std::vector<std::pair<long, double>>& rows,
                              const std::string& header, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << header << "\n";
    char buf[48];
    for (const auto& [idx, v] : rows) {
        std::snprintf(buf, sizeof buf, "%ld,%.17g", idx, v);
        f << buf << "\n";
    }
}

}  // namespace varfrac
