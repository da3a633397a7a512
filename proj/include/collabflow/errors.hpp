// Copyright (c) 2026 The collabflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace collabflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An actor holds a role id that does not resolve in the role table.
class UnknownRoleError : public Error {
 public:
  using Error::Error;
};

/// Instantiation refused: the definition is structurally unusable.
class DefinitionInvalidError : public Error {
 public:
  using Error::Error;
};

/// A required object class has no bound object.
class MissingBindingError : public Error {
 public:
  using Error::Error;
};

/// perform() called on an activity that is not in the Enabled state.
class NotEnabledError : public Error {
 public:
  using Error::Error;
};

/// The acting actor lacks the permission the activity kind requires.
/// A denied-access event is traced before this is thrown.
class AccessDeniedError : public Error {
 public:
  using Error::Error;
};

/// Non-completed activities remain but none is enabled.
class StalledError : public Error {
 public:
  using Error::Error;
};

/// A regulation case operation was called outside the legal state order.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// The acceptance policy needs stakeholder votes that were not supplied.
class MissingVotesError : public Error {
 public:
  using Error::Error;
};

/// A mutation would leave the definition invalid; the stores are untouched.
class MutationUnsoundError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration does not resolve or parse.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace collabflow
