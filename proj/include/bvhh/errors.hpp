#pragma once

#include <stdexcept>
#include <string>

namespace bvhh {

/* Bad user input: malformed presentation files, inconsistent multiplication
   tables, degenerate pairings, impossible CLI requests. Maps to exit code 3. */
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/* A structural identity the engine relies on (or is asked to certify) does
   not hold on the computed data. Carries a human-readable witness in bar
   notation where one exists. Maps to exit code 2. */
class TheoremViolation : public std::runtime_error {
public:
    explicit TheoremViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bvhh
