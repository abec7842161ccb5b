/* Copyright 2026 The procmine Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef PROCMINE_ERRORS_H_
#define PROCMINE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace procmine {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (XML, CSV, JSON, tree notation).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input that parses but violates a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An event-data or model source could not be reached.
class SourceError : public Error {
 public:
  using Error::Error;
};

// Persisted extraction state is unreadable or inconsistent.
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace procmine

#endif  // PROCMINE_ERRORS_H_
