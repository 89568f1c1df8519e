// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#include "fnkit/runtime/value.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace fnkit {

TypeTable make_type_table(const std::vector<Datatype>& declared) {
    TypeTable table;
    for (const auto& d : declared) {
        if (auto name = d.declared_name()) table.emplace(*name, d);
    }
    return table;
}

const Datatype& resolve_datatype(const Datatype& datatype, const TypeTable& types) {
    const Datatype* current = &datatype;
    for (std::size_t hops = 0; hops <= types.size(); ++hops) {
        const auto* r = current->get_if<TypeReference>();
        if (r == nullptr) return *current;
        auto it = types.find(r->type_name);
        if (it == types.end()) {
            throw Error(ErrorKind::kUnresolvedReference, "type \"" + r->type_name + "\" is not declared");
        }
        current = &it->second;
    }
    throw Error(ErrorKind::kUnresolvedReference, "type reference cycle");
}

Value default_value(const Datatype& datatype, const TypeTable& types) {
    const Datatype& d = resolve_datatype(datatype, types);
    if (const auto* n = d.get_if<NumericalDatatype>()) {
        return coerce_value(d, n->default_value, types);
    }
    if (const auto* t = d.get_if<TextDatatype>()) return t->default_value;
    if (const auto* b = d.get_if<BooleanDatatype>()) return b->default_value;
    if (const auto* s = d.get_if<StructDatatype>()) {
        Value out = Value::object();
        for (const auto& f : s->fields) out[f.name] = default_value(*f.datatype, types);
        return out;
    }
    if (const auto* a = d.get_if<ArrayDatatype>()) {
        Value out = Value::array();
        const Value element = default_value(*a->element, types);
        for (std::uint64_t i = 0; i < a->length; ++i) out.push_back(element);
        return out;
    }
    if (const auto* e = d.get_if<EnumerationDatatype>()) {
        return e->literals.empty() ? Value(0) : Value(e->literals.front().value);
    }
    return nullptr;
}

namespace {

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorKind::kTypeMismatch, what); }

}  // namespace

Value coerce_value(const Datatype& datatype, const Value& value, const TypeTable& types) {
    const Datatype& d = resolve_datatype(datatype, types);
    if (const auto* n = d.get_if<NumericalDatatype>()) {
        if (!value.is_number()) mismatch(std::string("expected number, got ") + value.type_name());
        const double x = value.get<double>();
        if (!std::isfinite(x) || x < base_lowest(n->base) || x > base_highest(n->base)) {
            mismatch(value.dump() + " not representable in " + std::string(to_string(n->base)));
        }
        if (is_integral(n->base)) {
            if (value.is_number_integer()) {
                if (value.is_number_unsigned() &&
                    value.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                    mismatch(value.dump() + " exceeds the integer range");
                }
                return value.get<std::int64_t>();
            }
            if (std::floor(x) != x) mismatch(value.dump() + " is not an integer");
            return static_cast<std::int64_t>(x);
        }
        if (n->base == NumericBase::kFloat32) {
            return static_cast<double>(static_cast<float>(x));
        }
        return x;
    }
    if (const auto* t = d.get_if<TextDatatype>()) {
        if (!value.is_string()) mismatch(std::string("expected string, got ") + value.type_name());
        if (value.get_ref<const std::string&>().size() > t->max_length) mismatch("text longer than MaxLength");
        return value;
    }
    if (d.is<BooleanDatatype>()) {
        if (!value.is_boolean()) mismatch(std::string("expected boolean, got ") + value.type_name());
        return value;
    }
    if (const auto* s = d.get_if<StructDatatype>()) {
        if (!value.is_object()) mismatch(std::string("expected object, got ") + value.type_name());
        Value out = Value::object();
        std::set<std::string> known;
        for (const auto& f : s->fields) {
            known.insert(f.name);
            auto it = value.find(f.name);
            if (it == value.end()) mismatch("missing struct field \"" + f.name + "\"");
            out[f.name] = coerce_value(*f.datatype, *it, types);
        }
        for (const auto& [key, member] : value.items()) {
            if (known.count(key) == 0) mismatch("unknown struct field \"" + key + "\"");
        }
        return out;
    }
    if (const auto* a = d.get_if<ArrayDatatype>()) {
        if (!value.is_array()) mismatch(std::string("expected array, got ") + value.type_name());
        if (value.size() != a->length) {
            mismatch("expected " + std::to_string(a->length) + " elements, got " + std::to_string(value.size()));
        }
        Value out = Value::array();
        for (const auto& element : value) out.push_back(coerce_value(*a->element, element, types));
        return out;
    }
    if (const auto* e = d.get_if<EnumerationDatatype>()) {
        for (const auto& l : e->literals) {
            if (value.is_string() && value.get_ref<const std::string&>() == l.name) return l.value;
            if (value.is_number_integer() && value.get<std::int64_t>() == l.value) return l.value;
        }
        mismatch(value.dump() + " is not an enumeration literal");
    }
    mismatch("unsupported datatype");
}

bool in_range(const Datatype& datatype, const Value& value, const TypeTable& types) {
    const Datatype& d = resolve_datatype(datatype, types);
    if (const auto* n = d.get_if<NumericalDatatype>()) {
        if (!value.is_number()) return false;
        const double x = value.get<double>();
        return x >= n->min && x <= n->max;
    }
    if (const auto* s = d.get_if<StructDatatype>()) {
        for (const auto& f : s->fields) {
            auto it = value.find(f.name);
            if (it == value.end() || !in_range(*f.datatype, *it, types)) return false;
        }
        return true;
    }
    if (const auto* a = d.get_if<ArrayDatatype>()) {
        for (const auto& element : value) {
            if (!in_range(*a->element, element, types)) return false;
        }
        return true;
    }
    return true;
}

std::string value_key(const Value& value) { return value.dump(); }

}  // namespace fnkit
