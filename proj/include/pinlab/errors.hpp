#pragma once

#include <stdexcept>
#include <string>

namespace pinlab {

// All recoverable failures carry a stable machine-readable name (the CLI
// surfaces it on exit code 1) plus a human message.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

private:
  std::string name_;
};

inline Error malformed_line(const std::string& path, std::size_t line_no,
                            const std::string& why) {
  return Error("MalformedLine", path + ":" + std::to_string(line_no) + ": " + why);
}

inline Error duplicate_pin_id(const std::string& pin_id) {
  return Error("DuplicatePinId", "pin id seen twice: " + pin_id);
}

inline Error duplicate_board_id(const std::string& board_id) {
  return Error("DuplicateBoardId", "board id seen twice: " + board_id);
}

}  // namespace pinlab
