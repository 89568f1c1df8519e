// Copyright 2026 fnkit Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <utility>

namespace fnkit {

/// Heap-allocated value with value semantics (deep copy, value equality).
/// Lets recursive aggregates such as struct/array datatypes hold a member of
/// a type that is still incomplete at the point of declaration.
template <typename T>
class Indirect {
public:
    Indirect() : ptr_(std::make_unique<T>()) {}
    Indirect(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
    Indirect(const Indirect& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Indirect(Indirect&&) noexcept = default;
    Indirect& operator=(const Indirect& other) {
        if (this != &other) {
            ptr_ = std::make_unique<T>(*other.ptr_);
        }
        return *this;
    }
    Indirect& operator=(Indirect&&) noexcept = default;
    ~Indirect() = default;

    T& operator*() { return *ptr_; }
    const T& operator*() const { return *ptr_; }
    T* operator->() { return ptr_.get(); }
    const T* operator->() const { return ptr_.get(); }

    friend bool operator==(const Indirect& a, const Indirect& b) { return *a.ptr_ == *b.ptr_; }

private:
    std::unique_ptr<T> ptr_;
};

}  // namespace fnkit
