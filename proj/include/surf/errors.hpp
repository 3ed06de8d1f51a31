#ifndef SURF_ERRORS_HPP
#define SURF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace surf {

// Malformed input: bad file syntax, dangling dart ids, invalid CLI arguments.
// CLI maps this to exit code 2.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation's stated hypothesis does not hold (width too small, cycle not
// chordless, collar not orderly, ...).  CLI maps this to exit code 1.
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

// An a-posteriori certificate failed.  Carries a human-readable witness.
class certification_error : public std::runtime_error {
public:
    certification_error(const std::string& what, std::string witness)
        : std::runtime_error(what + " [witness: " + witness + "]"), witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

// A search exceeded its configured node cap.  The result is unknown, not wrong.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant: a bug, never a user error.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

#define SURF_CHECK(cond, msg)                                  \
    do {                                                       \
        if (!(cond)) throw ::surf::internal_error(msg);        \
    } while (0)

#define SURF_REQUIRE(cond, msg)                                \
    do {                                                       \
        if (!(cond)) throw ::surf::hypothesis_error(msg);      \
    } while (0)

}  // namespace surf

#endif
