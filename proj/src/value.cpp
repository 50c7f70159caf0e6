#include "selfc/value.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"

#include "selfc/error.hpp"

namespace selfc {

namespace {

const char* type_name(const Value& v) {
    if (v.is_null()) return "null";
    if (v.is_integer()) return "integer";
    if (v.is_text()) return "text";
    if (v.is_list()) return "list";
    return "record";
}

[[noreturn]] void wrong_type(const Value& v, const char* wanted) {
    throw Error(ErrorCode::MalformedValue,
                std::string("expected ") + wanted + " value, got " + type_name(v));
}

}  // namespace

Value Value::list(List items) {
    Value v;
    v.data_ = std::move(items);
    return v;
}

Value Value::record(Record fields) {
    std::stable_sort(fields.begin(), fields.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < fields.size(); ++i) {
        if (fields[i].first == fields[i - 1].first) {
            throw Error(ErrorCode::MalformedValue, "duplicate record key \"" + fields[i].first + "\"");
        }
    }
    Value v;
    v.data_ = std::move(fields);
    return v;
}

std::int64_t Value::as_integer() const {
    if (!is_integer()) wrong_type(*this, "integer");
    return std::get<std::int64_t>(data_);
}

const std::string& Value::as_text() const {
    if (!is_text()) wrong_type(*this, "text");
    return std::get<std::string>(data_);
}

const Value::List& Value::as_list() const {
    if (!is_list()) wrong_type(*this, "list");
    return std::get<List>(data_);
}

Value::List& Value::as_list() {
    if (!is_list()) wrong_type(*this, "list");
    return std::get<List>(data_);
}

const Value::Record& Value::as_record() const {
    if (!is_record()) wrong_type(*this, "record");
    return std::get<Record>(data_);
}

namespace {

nlohmann::ordered_json to_ordered_json(const Value& v) {
    if (v.is_null()) return nullptr;
    if (v.is_integer()) return v.as_integer();
    if (v.is_text()) return v.as_text();
    if (v.is_list()) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& item : v.as_list()) arr.push_back(to_ordered_json(item));
        return arr;
    }
    auto obj = nlohmann::ordered_json::object();
    for (const auto& [key, val] : v.as_record()) obj[key] = to_ordered_json(val);
    return obj;
}

Value from_parsed(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null:
            return Value();
        case nlohmann::json::value_t::number_integer:
            return Value(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned: {
            auto u = j.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                throw Error(ErrorCode::MalformedValue, "integer out of range");
            }
            return Value(static_cast<std::int64_t>(u));
        }
        case nlohmann::json::value_t::string:
            return Value(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            Value::List items;
            items.reserve(j.size());
            for (const auto& item : j) items.push_back(from_parsed(item));
            return Value::list(std::move(items));
        }
        case nlohmann::json::value_t::object: {
            Value::Record fields;
            fields.reserve(j.size());
            for (auto it = j.begin(); it != j.end(); ++it) {
                fields.emplace_back(it.key(), from_parsed(it.value()));
            }
            return Value::record(std::move(fields));
        }
        default:
            throw Error(ErrorCode::MalformedValue,
                        std::string("unsupported value type: ") + j.type_name());
    }
}

}  // namespace

std::string Value::to_json() const { return to_ordered_json(*this).dump(); }

Value Value::from_json(std::string_view text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedValue, e.what());
    }
    return from_parsed(parsed);
}

Value text_list(const std::vector<std::string>& names) {
    Value::List items;
    items.reserve(names.size());
    for (const auto& name : names) items.emplace_back(name);
    return Value::list(std::move(items));
}

}  // namespace selfc
