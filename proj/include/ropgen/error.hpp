// Copyright 2026 The ropgen Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace ropgen {

// Bad flags, bad config values, missing input paths.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A document that yields no sampling distribution (no in-vocabulary terms,
// or too few distinct terms to form a pair).
class UnsampleableDocument : public DataError {
 public:
  UnsampleableDocument(const std::string& doc_id, const std::string& reason)
      : DataError("unsampleable document '" + doc_id + "': " + reason),
        doc_id_(doc_id),
        reason_(reason) {}

  const std::string& doc_id() const { return doc_id_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string doc_id_;
  std::string reason_;
};

}  // namespace ropgen
