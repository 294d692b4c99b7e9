// Copyright 2026 The Azana Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AZANA_ERROR_H_
#define AZANA_ERROR_H_

#include <stdexcept>
#include <string>

namespace azana {

// Failure categories map one-to-one onto the CLI exit codes.
enum class ErrorKind {
  kInput = 1,       // malformed or inconsistent input data
  kDegenerate = 2,  // analysis cannot be carried out on the given graph
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string stage, const std::string& message)
      : std::runtime_error(stage.empty() ? message : stage + ": " + message),
        kind_(kind),
        stage_(std::move(stage)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
  std::string stage_;
};

inline Error InputError(const std::string& message) {
  return Error(ErrorKind::kInput, "", message);
}

}  // namespace azana

#endif  // AZANA_ERROR_H_
