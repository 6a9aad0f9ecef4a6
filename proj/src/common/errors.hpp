#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace testrec {

enum class ErrorKind {
  Usage,
  Io,
  Lex,
  Parse,
  ParseReject,
  EmptyBag,
  EmptyCorpus,
  Format,
  VocabMismatch,
  ModelMismatch,
  ZeroVector,
  NoPairs,
  DegenerateSample,
  MissingArtifact,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class LexError : public Error {
 public:
  LexError(std::size_t offset, const std::string& what)
      : Error(ErrorKind::Lex,
              "lex error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& expected)
      : Error(ErrorKind::Parse, "parse error at offset " +
                                    std::to_string(offset) + ": expected " +
                                    expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

// A snippet that cannot be turned into a code vector (lex/parse failure,
// cleaning rejection or empty bag). `reason` is a short machine tag.
class ParseReject : public Error {
 public:
  ParseReject(std::string reason, const std::string& detail)
      : Error(ErrorKind::ParseReject, reason + ": " + detail),
        reason_(std::move(reason)) {}

  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

#define TESTREC_SIMPLE_ERROR(Name, Kind)                         \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& message)                    \
        : Error(ErrorKind::Kind, message) {}                     \
  };

TESTREC_SIMPLE_ERROR(UsageError, Usage)
TESTREC_SIMPLE_ERROR(IoError, Io)
TESTREC_SIMPLE_ERROR(EmptyBag, EmptyBag)
TESTREC_SIMPLE_ERROR(EmptyCorpus, EmptyCorpus)
TESTREC_SIMPLE_ERROR(FormatError, Format)
TESTREC_SIMPLE_ERROR(VocabMismatch, VocabMismatch)
TESTREC_SIMPLE_ERROR(ModelMismatch, ModelMismatch)
TESTREC_SIMPLE_ERROR(ZeroVector, ZeroVector)
TESTREC_SIMPLE_ERROR(NoPairs, NoPairs)
TESTREC_SIMPLE_ERROR(DegenerateSample, DegenerateSample)
TESTREC_SIMPLE_ERROR(MissingArtifact, MissingArtifact)

#undef TESTREC_SIMPLE_ERROR

}  // namespace testrec
