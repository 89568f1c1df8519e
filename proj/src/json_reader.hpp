// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fnkit/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fnkit::detail {

inline std::string member_path(const std::string& base, std::string_view key) {
    if (base.empty()) {
        return std::string(key);
    }
    return base + "." + std::string(key);
}

inline std::string index_path(const std::string& base, std::size_t index) {
    return base + "[" + std::to_string(index) + "]";
}

inline const char* json_type_name(const nlohmann::json& j) { return j.type_name(); }

/// Strict reader over one JSON object. Every accessor marks the member as
/// known; finish() reports whatever was left over as unknown members.
class ObjectReader {
public:
    ObjectReader(const nlohmann::json& j, std::string path, ValidationReport& report)
        : path_(std::move(path)), report_(report) {
        if (j.is_object()) {
            obj_ = &j;
        } else {
            report_.error(path_, "schema", std::string("expected object, got ") + json_type_name(j));
        }
    }

    ObjectReader(const ObjectReader&) = delete;
    ObjectReader& operator=(const ObjectReader&) = delete;

    bool valid() const { return obj_ != nullptr; }
    const std::string& path() const { return path_; }
    ValidationReport& report() { return report_; }
    std::string at(std::string_view key) const { return member_path(path_, key); }

    const nlohmann::json* member(std::string_view key, bool required) {
        if (obj_ == nullptr) {
            return nullptr;
        }
        seen_.insert(std::string(key));
        auto it = obj_->find(key);
        if (it == obj_->end()) {
            if (required) {
                report_.error(at(key), "schema", "missing required member");
            }
            return nullptr;
        }
        return &*it;
    }

    bool has(std::string_view key) const { return obj_ != nullptr && obj_->contains(key); }

    std::optional<std::string> opt_string(std::string_view key, bool required = false) {
        const auto* j = member(key, required);
        if (j == nullptr) {
            return std::nullopt;
        }
        if (!j->is_string()) {
            type_error(key, "string", *j);
            return std::nullopt;
        }
        return j->get<std::string>();
    }

    std::string string(std::string_view key) { return opt_string(key, true).value_or(std::string{}); }

    std::string nonempty_string(std::string_view key) {
        auto value = opt_string(key, true);
        if (value && value->empty()) {
            report_.error(at(key), "schema", "must not be empty");
        }
        return value.value_or(std::string{});
    }

    std::optional<double> opt_number(std::string_view key, bool required = false,
                                     std::optional<double> minimum = std::nullopt) {
        const auto* j = member(key, required);
        if (j == nullptr) {
            return std::nullopt;
        }
        if (!j->is_number()) {
            type_error(key, "number", *j);
            return std::nullopt;
        }
        const double value = j->get<double>();
        if (minimum && value < *minimum) {
            report_.error(at(key), "schema", "must be >= " + format_number(*minimum));
        }
        return value;
    }

    double number(std::string_view key, std::optional<double> minimum = std::nullopt) {
        return opt_number(key, true, minimum).value_or(0.0);
    }

    std::optional<std::int64_t> opt_integer(std::string_view key, bool required = false,
                                            std::optional<std::int64_t> minimum = std::nullopt) {
        const auto* j = member(key, required);
        if (j == nullptr) {
            return std::nullopt;
        }
        if (!j->is_number_integer()) {
            type_error(key, "integer", *j);
            return std::nullopt;
        }
        if (j->is_number_unsigned() && j->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            report_.error(at(key), "schema", "integer out of range");
            return std::nullopt;
        }
        const auto value = j->get<std::int64_t>();
        if (minimum && value < *minimum) {
            report_.error(at(key), "schema", "must be >= " + std::to_string(*minimum));
        }
        return value;
    }

    std::int64_t integer(std::string_view key, std::optional<std::int64_t> minimum = std::nullopt) {
        return opt_integer(key, true, minimum).value_or(0);
    }

    std::optional<std::uint64_t> opt_count(std::string_view key, bool required = false, std::int64_t minimum = 0) {
        auto value = opt_integer(key, required, minimum);
        if (!value || *value < minimum) {
            return std::nullopt;
        }
        return static_cast<std::uint64_t>(*value);
    }

    std::uint64_t count(std::string_view key, std::int64_t minimum = 0) {
        return opt_count(key, true, minimum).value_or(static_cast<std::uint64_t>(minimum));
    }

    std::optional<bool> opt_boolean(std::string_view key, bool required = false) {
        const auto* j = member(key, required);
        if (j == nullptr) {
            return std::nullopt;
        }
        if (!j->is_boolean()) {
            type_error(key, "boolean", *j);
            return std::nullopt;
        }
        return j->get<bool>();
    }

    bool boolean(std::string_view key) { return opt_boolean(key, true).value_or(false); }

    /// Enumerated string member. `parse` maps text to the enum; `allowed` is
    /// only used for the error message.
    template <typename E, typename Parse>
    std::optional<E> opt_enumeration(std::string_view key, bool required, Parse&& parse, std::string_view allowed) {
        auto text = opt_string(key, required);
        if (!text) {
            return std::nullopt;
        }
        std::optional<E> value = parse(*text);
        if (!value) {
            report_.error(at(key), "schema",
                          "value \"" + *text + "\" is not one of " + std::string(allowed));
        }
        return value;
    }

    template <typename E, typename Parse>
    E enumeration(std::string_view key, Parse&& parse, std::string_view allowed, E fallback) {
        return opt_enumeration<E>(key, true, std::forward<Parse>(parse), allowed).value_or(fallback);
    }

    /// Array member decoded element-wise. Absent optional arrays yield {}.
    template <typename T, typename Decode>
    std::vector<T> list(std::string_view key, bool required, Decode&& decode, std::size_t min_items = 0) {
        std::vector<T> out;
        const auto* j = member(key, required);
        if (j == nullptr) {
            return out;
        }
        if (!j->is_array()) {
            type_error(key, "array", *j);
            return out;
        }
        if (j->size() < min_items) {
            report_.error(at(key), "schema", "expected at least " + std::to_string(min_items) + " item(s)");
        }
        const std::string base = at(key);
        for (std::size_t i = 0; i < j->size(); ++i) {
            out.push_back(decode((*j)[i], index_path(base, i)));
        }
        return out;
    }

    std::vector<std::string> string_list(std::string_view key, bool required, std::size_t min_items = 0) {
        return list<std::string>(key, required,
                                 [this](const nlohmann::json& e, const std::string& p) {
                                     if (!e.is_string()) {
                                         report_.error(p, "schema",
                                                       std::string("expected string, got ") + json_type_name(e));
                                         return std::string{};
                                     }
                                     return e.get<std::string>();
                                 },
                                 min_items);
    }

    void finish() {
        if (obj_ == nullptr) {
            return;
        }
        for (const auto& [key, value] : obj_->items()) {
            if (seen_.count(key) == 0) {
                report_.error(at(key), "schema", "unknown member");
            }
        }
    }

private:
    void type_error(std::string_view key, const char* expected, const nlohmann::json& actual) {
        report_.error(at(key), "schema", std::string("expected ") + expected + ", got " + json_type_name(actual));
    }

    static std::string format_number(double v) {
        if (std::floor(v) == v) {
            return std::to_string(static_cast<long long>(v));
        }
        return std::to_string(v);
    }

    const nlohmann::json* obj_ = nullptr;
    std::string path_;
    ValidationReport& report_;
    std::set<std::string, std::less<>> seen_;
};

}  // namespace fnkit::detail
