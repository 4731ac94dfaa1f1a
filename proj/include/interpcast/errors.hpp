#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace interpcast {

// Base for every error the engine raises. Catching interpcast::Error at the
// CLI boundary is enough to report any failure with context.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A required call-level precondition was violated; no provider call was made.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// ---- gateway ----

// Transport-level failure talking to a provider, after retries.
class TransportError : public Error {
public:
    explicit TransportError(const std::string& msg, bool retryable = true)
        : Error(msg), retryable_(retryable) {}

    bool retryable() const { return retryable_; }

private:
    bool retryable_;
};

// The scripted provider ran out of entries.
class ScriptExhausted : public Error {
public:
    using Error::Error;
};

// The scripted provider's next entry expected a different role tag.
class RoleMismatch : public Error {
public:
    using Error::Error;
};

// No parseable JSON in any response attempt.
class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed JSON that still violates the schema or domain invariants
// after all correction attempts.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join("", violations)), violations_(std::move(violations)) {}
    explicit ValidationError(const std::string& one)
        : ValidationError(std::vector<std::string>{one}) {}
    ValidationError(const std::string& context, std::vector<std::string> violations)
        : Error(join(context, violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::string& context, const std::vector<std::string>& v) {
        std::string out = context.empty() ? "validation failed:" : context + ": validation failed:";
        for (const auto& s : v) {
            out += " [" + s + "]";
        }
        return out;
    }

    std::vector<std::string> violations_;
};

// A reviewer or enrichment response left some topic_index uncovered.
class MissingVerdict : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// ---- orchestrator ----

// No topic-case pair survived review; the chapter cannot proceed.
class NoValidTopics : public Error {
public:
    using Error::Error;
};

// A checkpoint file does not match its digest sidecar.
class CorruptCheckpoint : public Error {
public:
    using Error::Error;
};

// Supplied run configuration differs from the snapshot frozen at run start.
class ConfigMismatch : public Error {
public:
    using Error::Error;
};

// ---- ingest ----

class ManifestError : public Error {
public:
    using Error::Error;
};

class SourceMissing : public Error {
public:
    using Error::Error;
};

class ChapterTooLong : public Error {
public:
    using Error::Error;
};

// ---- config ----

class ConfigError : public Error {
public:
    using Error::Error;
};

// ---- audio ----

class EmptyManuscript : public Error {
public:
    using Error::Error;
};

class TtsTransportError : public Error {
public:
    using Error::Error;
};

// The TTS backend returned a rate/channel layout the pipeline cannot use.
class TtsFormatError : public Error {
public:
    using Error::Error;
};

class RateMismatch : public Error {
public:
    using Error::Error;
};

class ChannelMismatch : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace interpcast
