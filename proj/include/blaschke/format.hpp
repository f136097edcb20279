#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace blaschke {

// Shortest round-trippable decimal form; output files and JSON depend on this
// being identical across runs and thread counts.
inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Minimal JSON writer that preserves insertion order of keys. Values are
// emitted pre-formatted: use num()/str()/raw() helpers below.
class JsonWriter {
public:
    void begin_object() { sep(); out_ += '{'; depth_push(); }
    void end_object() { out_ += '}'; depth_pop(); }
    void begin_array() { sep(); out_ += '['; depth_push(); }
    void end_array() { out_ += ']'; depth_pop(); }

    void key(const std::string& k) {
        sep();
        out_ += '"';
        escape(k);
        out_ += "\":";
        pending_value_ = true;
    }
    void value_raw(const std::string& v) { sep(); out_ += v; }
    void value_str(const std::string& v) {
        sep();
        out_ += '"';
        escape(v);
        out_ += '"';
    }
    void value_num(double v) { value_raw(fmt17(v)); }
    void value_int(long long v) { value_raw(std::to_string(v)); }
    void value_bool(bool v) { value_raw(v ? "true" : "false"); }
    void value_null() { value_raw("null"); }

    const std::string& str() const { return out_; }

private:
    std::string out_;
    std::vector<bool> first_;
    bool pending_value_ = false;

    void depth_push() { first_.push_back(true); }
    void depth_pop() {
        if (!first_.empty()) first_.pop_back();
        if (!first_.empty()) first_.back() = false;
    }
    void sep() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (first_.empty()) return;
        if (first_.back()) first_.back() = false;
        else out_ += ',';
    }
    void escape(const std::string& s) {
        for (char c : s) {
            switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            case '\r': out_ += "\\r"; break;
            default: out_ += c;
            }
        }
    }
};

} // namespace blaschke
