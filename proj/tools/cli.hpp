// Copyright 2026 The vqopt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Command-line entry point. Exit codes: 0 success, 1 domain or I/O error,
 * 2 usage error. Logs go to the error stream; data goes to files under --out
 * (baseline prints its single number to the output stream).
 */
#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace vqopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Set from a SIGINT handler; sweeps stop between runs when it is raised.
std::atomic<bool> &cancel_flag();

int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Convenience overload; args excludes the program name.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace vqopt::cli
