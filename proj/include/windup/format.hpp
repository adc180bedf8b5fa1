#pragma once

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace windup {

// Shortest round-trip decimal form; keeps emitted files byte-deterministic.
inline void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("append_double: conversion failed");
    out.append(buf, res.ptr);
}

inline std::string format_double(double v) {
    std::string s;
    append_double(s, v);
    return s;
}

inline double parse_double(const char* first, const char* last) {
    double v = 0.0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw std::runtime_error("parse_double: invalid number '" + std::string(first, last) + "'");
    }
    return v;
}

}  // namespace windup
