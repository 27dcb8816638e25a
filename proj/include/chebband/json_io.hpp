#pragma once

#include <string>

#include "chebband/weights.hpp"

namespace chebband {

/// Minimal deterministic JSON writer: objects/arrays emitted in insertion
/// order, every real serialized with 17 significant digits.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key = "");
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    template <class T>
    JsonWriter& kv(const std::string& k, const T& v) {
        key(k);
        return value(v);
    }
    template <class Seq>
    JsonWriter& kv_array(const std::string& k, const Seq& seq) {
        begin_array(k);
        for (const auto& v : seq) value(v);
        return end_array();
    }
    std::string str() const { return out_; }

  private:
    std::string out_;
    std::vector<char> stack_;   // '{' or '['
    std::vector<bool> first_;
    void comma();
};

std::string format_double(double v);

/// Readers for the config files.  Throw std::runtime_error with a readable
/// message on malformed input.
IntervalSystem load_system(const std::string& path);
Weight load_weight(const std::string& path, const IntervalSystem& sys);

void write_file(const std::string& path, const std::string& content);

}  // namespace chebband
