#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mink {

/// Formats a double with 17 significant digits, locale-independent. All JSON
/// and CSV output goes through this so identical inputs yield byte-identical
/// files.
std::string format_double(double v);

/// Minimal JSON emitter with fixed (insertion) field order.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view name);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(long long v);
    JsonWriter& value(std::size_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }

    const std::string& str() const noexcept { return out_; }

private:
    void separate();

    std::string out_;
    std::vector<bool> need_comma_;
    bool after_key_ = false;
};

} // namespace mink
