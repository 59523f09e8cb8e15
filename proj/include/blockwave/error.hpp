#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace blockwave {

enum class errc {
  invalid_base,
  empty_sequence,
  corrupt_word,
  index_out_of_range,
  malformed_fasta,
  invalid_scheme,
  invalid_valid_count,
  invalid_config,
  table_too_large,
  empty_length,
  profile_invalid,
  empty_batch,
  task_failed,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_base: return "InvalidBase";
    case errc::empty_sequence: return "EmptySequence";
    case errc::corrupt_word: return "CorruptWord";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::malformed_fasta: return "MalformedFasta";
    case errc::invalid_scheme: return "InvalidScheme";
    case errc::invalid_valid_count: return "InvalidValidCount";
    case errc::invalid_config: return "InvalidConfig";
    case errc::table_too_large: return "TableTooLarge";
    case errc::empty_length: return "EmptyLength";
    case errc::profile_invalid: return "ProfileInvalid";
    case errc::empty_batch: return "EmptyBatch";
    case errc::task_failed: return "TaskFailed";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above; the
// message is human-readable and already names the offending position/record.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  errc code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  errc code_;
  std::string detail_;
};

// Input problems the CLI maps to exit status 2.
inline bool is_input_error(errc code) noexcept {
  return code != errc::task_failed;
}

}  // namespace blockwave
