#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace testgen {

/// Path of a checked-in fixture file.
std::filesystem::path fixture(const std::string& name);

/// A posts dump with 1..max_threads java questions over a small vocabulary,
/// 0..5 answers each with 0..4 code blocks and frequently tied scores.
std::string random_dump(std::uint64_t seed, int max_threads);

/// A random printable document of a few lines, optionally with indentation
/// and multi-byte characters.
std::string random_document(std::uint64_t seed);

}  // namespace testgen
