/*
 * Copyright 2026 The noc-pareto Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nocpareto/error.hpp"

namespace nocpareto {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidPair: return "invalid-pair";
    case ErrorKind::kIndex: return "index";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kSamplingFailure: return "sampling-failure";
    case ErrorKind::kUnroutable: return "unroutable";
    case ErrorKind::kInvalidWeight: return "invalid-weight";
    case ErrorKind::kRejectedInput: return "rejected-input";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace nocpareto
