#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace dispersa {

/// Compact "%.4g" rendering for messages.
inline std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NegativeOrderOnNonzeroMean : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class ZeroData : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Picard iteration failed to contract.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// sup norm of the solution crossed the configured ceiling.
class BlowupDetected : public Error {
public:
    BlowupDetected(const std::string& what, double time)
        : Error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

/**
 * Non-fatal findings attached to results: wrap-around at the domain edges,
 * taper activity, etc. Never changes control flow.
 */
struct Warnings {
    std::vector<std::string> messages;

    bool empty() const { return messages.empty(); }
    void add(std::string message) { messages.push_back(std::move(message)); }
    void merge(const Warnings& other) {
        messages.insert(messages.end(), other.messages.begin(), other.messages.end());
    }
    bool contains(const std::string& needle) const {
        for (const auto& m : messages) {
            if (m.find(needle) != std::string::npos) return true;
        }
        return false;
    }
};

}  // namespace dispersa
