#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsrt {

/// Base for every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, PGM, ...). Carries a byte offset when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, std::size_t byte_offset = 0)
        : Error(msg), byte_offset(byte_offset) {}
    std::size_t byte_offset;
};

/// An input value violates a documented invariant (non-positive extent, score
/// out of range, empty expression, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A label or class id is not present in the vocabulary in use.
class VocabularyError : public Error {
public:
    using Error::Error;
};

/// Tree construction could not place every symbol. Orphan node ids refer to
/// positions in the canonical (reading-order) symbol list.
class StructureError : public Error {
public:
    StructureError(const std::string& msg, std::vector<int> orphans)
        : Error(msg), orphan_ids(std::move(orphans)) {}
    std::vector<int> orphan_ids;
};

/// LaTeX string could not be tokenized; position is a character offset.
class TokenizeError : public Error {
public:
    TokenizeError(const std::string& msg, std::size_t position)
        : Error(msg), position(position) {}
    std::size_t position;
};

/// Caller passed inconsistent data (duplicate ids, missing files, bad flags).
class InputError : public Error {
public:
    using Error::Error;
};

/// A value violates the contract of the API it was passed to (e.g. a tree
/// that breaks the Bsrt invariants).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Synthetic layout cannot place the requested AST legibly.
class LayoutError : public Error {
public:
    using Error::Error;
};

}  // namespace bsrt
