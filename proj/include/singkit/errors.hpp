#ifndef SINGKIT_ERRORS_HPP
#define SINGKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace singkit {

// A mathematical precondition does not hold; the operation declines to answer.
class Refusal : public std::runtime_error {
public:
    explicit Refusal(const std::string& reason) : std::runtime_error("refused: " + reason) {}
};

inline const char* kJet0Refusal = "jet₀ not guaranteed in char p with J ≠ 0";
inline const char* kOneParamRefusal = "separability defined for one parameter";

}  // namespace singkit

#endif
