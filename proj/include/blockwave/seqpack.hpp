#pragma once

// 4-bit packed nucleotide sequences and a minimal FASTA reader.
//
// Eight bases share one 32-bit word. Base p lives in nibble (p % 8), counted
// from the least-significant nibble, so it is extracted with
// (word >> 4 * (p % 8)) & 0xF. Unused nibbles of the final word hold
// kPadCode, which is distinct from every real base code including N.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockwave/error.hpp"

namespace blockwave {

using base_code = std::uint8_t;

inline constexpr base_code kCodeA = 0;
inline constexpr base_code kCodeC = 1;
inline constexpr base_code kCodeG = 2;
inline constexpr base_code kCodeT = 3;  // also U
inline constexpr base_code kCodeN = 4;
inline constexpr base_code kPadCode = 15;
inline constexpr std::size_t kBasesPerWord = 8;

namespace detail {

inline constexpr base_code kInvalidCode = 0xFF;

constexpr base_code encode_byte(unsigned char c) noexcept {
  switch (c) {
    case 'A': case 'a': return kCodeA;
    case 'C': case 'c': return kCodeC;
    case 'G': case 'g': return kCodeG;
    case 'T': case 't':
    case 'U': case 'u': return kCodeT;
    case 'N': case 'n': return kCodeN;
    default: return kInvalidCode;
  }
}

inline constexpr char kDecode[5] = {'A', 'C', 'G', 'T', 'N'};

inline std::string printable(unsigned char c) {
  if (c >= 0x20 && c < 0x7F) return std::string("'") + static_cast<char>(c) + "'";
  static constexpr char hex[] = "0123456789abcdef";
  return std::string("0x") + hex[c >> 4] + hex[c & 0xF];
}

}  // namespace detail

class PackedSequence {
 public:
  PackedSequence() = default;

  std::size_t length() const noexcept { return length_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const std::uint32_t> words() const noexcept { return words_; }

  // Number of 8-base blocks, i.e. ceil(length / 8).
  std::size_t blocks() const noexcept { return words_.size(); }

  // Real bases stored in block `index` (8 except possibly for the last one).
  std::size_t valid_in_block(std::size_t index) const noexcept {
    const std::size_t begin = index * kBasesPerWord;
    return length_ - begin < kBasesPerWord ? length_ - begin : kBasesPerWord;
  }

  base_code code_at(std::size_t pos) const noexcept {
    return static_cast<base_code>((words_[pos / kBasesPerWord] >> (4 * (pos % kBasesPerWord))) & 0xFu);
  }

  // Builds a sequence from raw words without validation; unpack_sequence()
  // is where corrupt content is reported.
  static PackedSequence from_words(std::vector<std::uint32_t> words, std::size_t length) {
    PackedSequence seq;
    seq.words_ = std::move(words);
    seq.length_ = length;
    return seq;
  }

  friend bool operator==(const PackedSequence&, const PackedSequence&) = default;

 private:
  std::vector<std::uint32_t> words_;
  std::size_t length_ = 0;
};

inline PackedSequence pack_sequence(std::string_view text) {
  if (text.empty()) throw error(errc::empty_sequence, "sequence has zero length");

  std::vector<std::uint32_t> words((text.size() + kBasesPerWord - 1) / kBasesPerWord, 0xFFFFFFFFu);
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const auto byte = static_cast<unsigned char>(text[pos]);
    const base_code code = detail::encode_byte(byte);
    if (code == detail::kInvalidCode) {
      throw error(errc::invalid_base,
                  "byte " + detail::printable(byte) + " at position " + std::to_string(pos));
    }
    const unsigned shift = 4 * (pos % kBasesPerWord);
    std::uint32_t& word = words[pos / kBasesPerWord];
    word = (word & ~(0xFu << shift)) | (std::uint32_t{code} << shift);
  }
  return PackedSequence::from_words(std::move(words), text.size());
}

inline std::string unpack_sequence(const PackedSequence& seq) {
  if (seq.word_count() != (seq.length() + kBasesPerWord - 1) / kBasesPerWord) {
    throw error(errc::corrupt_word, "word count does not match length " + std::to_string(seq.length()));
  }
  std::string text(seq.length(), '\0');
  for (std::size_t pos = 0; pos < seq.length(); ++pos) {
    const base_code code = seq.code_at(pos);
    if (code > kCodeN) {
      throw error(errc::corrupt_word, "nibble " + std::to_string(code) + " at position " +
                                          std::to_string(pos) + " (word " +
                                          std::to_string(pos / kBasesPerWord) + ")");
    }
    text[pos] = detail::kDecode[code];
  }
  return text;
}

inline std::uint32_t fetch_word(const PackedSequence& seq, std::size_t block_index) {
  if (block_index >= seq.word_count()) {
    throw error(errc::index_out_of_range, "block " + std::to_string(block_index) + " of " +
                                              std::to_string(seq.word_count()));
  }
  return seq.words()[block_index];
}

struct FastaRecord {
  std::string name;
  PackedSequence sequence;
};

// Header lines start with '>'; the record name is the header text up to the
// first whitespace. Blank lines are ignored, CR line endings are tolerated.
inline std::vector<FastaRecord> read_fasta(std::istream& in) {
  std::vector<FastaRecord> records;
  std::string name;
  std::string body;
  std::size_t header_line = 0;
  bool open = false;

  auto finish = [&] {
    if (!open) return;
    if (body.empty()) {
      throw error(errc::malformed_fasta,
                  "record '" + name + "' (line " + std::to_string(header_line) + ") has no sequence");
    }
    try {
      records.push_back({name, pack_sequence(body)});
    } catch (const error& e) {
      throw error(e.code(), "record '" + name + "': " + e.detail());
    }
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '>') {
      finish();
      const auto end = line.find_first_of(" \t", 1);
      name = line.substr(1, end == std::string::npos ? std::string::npos : end - 1);
      if (name.empty()) throw error(errc::malformed_fasta, "empty record name at line " + std::to_string(line_no));
      body.clear();
      header_line = line_no;
      open = true;
    } else {
      if (!open) throw error(errc::malformed_fasta, "sequence before first header at line " + std::to_string(line_no));
      body += line;
    }
  }
  finish();
  return records;
}

}  // namespace blockwave
