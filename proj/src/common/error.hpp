// Copyright 2026 The mapsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mapsynth {

enum class ErrorCode {
  Argument = 1,
  Parse,
  Io,
  Network,
  Format,
  Domain,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed document; `offset` is the byte position where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(ErrorCode::Parse, what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Transport-level failure. `retriable` is false for definitive HTTP errors
/// such as 404.
class NetworkError : public Error {
 public:
  NetworkError(const std::string& what, std::string url, int status, bool retriable)
      : Error(ErrorCode::Network, what), url_(std::move(url)), status_(status),
        retriable_(retriable) {}

  const std::string& url() const noexcept { return url_; }
  int status() const noexcept { return status_; }
  bool retriable() const noexcept { return retriable_; }

 private:
  std::string url_;
  int status_;
  bool retriable_;
};

}  // namespace mapsynth
