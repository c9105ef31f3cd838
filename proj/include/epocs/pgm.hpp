#pragma once

#include "epocs/signal.hpp"

#include <stdexcept>
#include <string>

namespace epocs {

// Grayscale PGM, maxval up to 255.  Reading accepts binary P5 and ASCII P2;
// writing always emits binary P5.
class PgmError : public std::runtime_error {
public:
    enum class Code { open_failed, bad_magic, bad_header, unsupported_maxval, truncated };

    PgmError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

Signal load_pgm(const std::string& path);

// Clamps to [0, 255], rounds to nearest integer, writes binary P5.
void save_pgm(const std::string& path, const Signal& image);

} // namespace epocs
