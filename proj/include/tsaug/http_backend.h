// Copyright 2026 The tsaug Authors.
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

#ifndef TSAUG_HTTP_BACKEND_H_
#define TSAUG_HTTP_BACKEND_H_

#include <chrono>
#include <string>

#include "tsaug/simplifier.h"

namespace tsaug {

// POSTs {"texts": [...]} to the URL and expects {"simplified": [...]} of equal
// length. A null entry marks a per-text failure; any non-200 status fails the
// whole batch. Up to max_concurrency chunks are in flight at once.
class HttpSimplifier : public Simplifier {
 public:
  HttpSimplifier(std::string url, std::size_t batch_size,
                 std::chrono::milliseconds timeout, std::size_t max_concurrency);

  std::string id() const override { return "http:" + url_; }

 protected:
  std::vector<RawSimplification> RunAll(std::span<const std::string> texts) override;
  std::vector<RawSimplification> RunChunk(std::span<const std::string> texts) override;

 private:
  std::string url_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::chrono::milliseconds timeout_;
  std::size_t max_concurrency_;
};

}  // namespace tsaug

#endif  // TSAUG_HTTP_BACKEND_H_
