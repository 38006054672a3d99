// Copyright 2026 The AnsatzForge Authors
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

#ifndef ANSATZFORGE_ERROR_H
#define ANSATZFORGE_ERROR_H

#include <stdexcept>
#include <string>

namespace ansatzforge {

enum class ErrorKind {
    kValidation,
    kConvergence,
    kIo,
};

/// Every failure the engine reports carries one of three kinds; the CLI maps
/// them onto exit codes 2, 3 and 4.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

inline Error validation_error(const std::string &what) { return Error(ErrorKind::kValidation, what); }
inline Error convergence_error(const std::string &what) { return Error(ErrorKind::kConvergence, what); }
inline Error io_error(const std::string &what) { return Error(ErrorKind::kIo, what); }

}  // namespace ansatzforge

#endif
