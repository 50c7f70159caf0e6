#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace selfc {

/// The generic datum threaded through a pipeline: null, integer, text,
/// list, or record. Record keys are kept sorted and unique so two equal
/// records always compare and serialize identically.
class Value {
public:
    using List = std::vector<Value>;
    using Record = std::vector<std::pair<std::string, Value>>;

    Value() : data_(std::monostate{}) {}
    Value(std::int64_t n) : data_(n) {}
    Value(int n) : data_(static_cast<std::int64_t>(n)) {}
    Value(std::string text) : data_(std::move(text)) {}
    Value(const char* text) : data_(std::string(text)) {}

    static Value list(List items = {});
    /// Builds a record; duplicate keys raise Error{MalformedValue}.
    static Value record(Record fields = {});

    bool is_null() const { return std::holds_alternative<std::monostate>(data_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(data_); }
    bool is_text() const { return std::holds_alternative<std::string>(data_); }
    bool is_list() const { return std::holds_alternative<List>(data_); }
    bool is_record() const { return std::holds_alternative<Record>(data_); }

    std::int64_t as_integer() const;
    const std::string& as_text() const;
    const List& as_list() const;
    List& as_list();
    const Record& as_record() const;

    friend bool operator==(const Value& lhs, const Value& rhs) { return lhs.data_ == rhs.data_; }
    friend bool operator!=(const Value& lhs, const Value& rhs) { return !(lhs == rhs); }

    /// Compact JSON rendering with deterministic key order.
    std::string to_json() const;

    /// Parses JSON text. Booleans and non-integral numbers have no Value
    /// representation and raise Error{MalformedValue}.
    static Value from_json(std::string_view text);

private:
    std::variant<std::monostate, std::int64_t, std::string, List, Record> data_;
};

/// Convenience for trace assertions: a list of text values.
Value text_list(const std::vector<std::string>& names);

}  // namespace selfc
