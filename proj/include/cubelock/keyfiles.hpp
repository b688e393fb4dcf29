#pragma once

#include <string>

#include "cubelock/puzzle.hpp"

namespace cubelock {

// Line-oriented text formats:
//
//   cubelock-key v1        cubelock-ct v1
//   p=<hex>                fp=<32 hex chars>
//   b=<hex>                l=<decimal>
//   T=<decimal seconds>    chain=<chain id or "none">
//   lambda=<decimal>       c=<hex>

std::string key_to_text(const PuzzleParams& params);
PuzzleParams key_from_text(const std::string& text);

std::string ciphertext_to_text(const Ciphertext& ct);
Ciphertext ciphertext_from_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Bytes read_file_bytes(const std::string& path, std::size_t max_bytes = 0);
void write_file_bytes(const std::string& path, const Bytes& content);

} // namespace cubelock
