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

#include "tsaug/http_backend.h"

#include <algorithm>
#include <future>

#include <fmt/format.h>

#include "httplib.h"
#include "json.hpp"
#include "tsaug/errors.h"

namespace tsaug {

HttpSimplifier::HttpSimplifier(std::string url, std::size_t batch_size,
                               std::chrono::milliseconds timeout,
                               std::size_t max_concurrency)
    : Simplifier(batch_size),
      url_(std::move(url)),
      timeout_(timeout),
      max_concurrency_(std::max<std::size_t>(max_concurrency, 1)) {
  const auto scheme_end = url_.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("http backend URL needs a scheme");
  }
  const auto path_start = url_.find('/', scheme_end + 3);
  origin_ = url_.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url_.substr(path_start);
  if (origin_.size() <= scheme_end + 3) {
    throw ConfigError("http backend URL needs a host");
  }
}

std::vector<RawSimplification> HttpSimplifier::RunChunk(
    std::span<const std::string> texts) {
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  nlohmann::json body = {{"texts", nlohmann::json::array()}};
  for (const auto& t : texts) body["texts"].push_back(t);
  auto res = client.Post(
      path_, body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace),
      "application/json");
  if (!res) {
    throw BackendError(fmt::format("http backend transport failure: {}",
                                   httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    throw BackendError(fmt::format("http backend returned status {}", res->status));
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw BackendError("http backend returned malformed JSON");
  }
  if (!reply.is_object() || !reply.contains("simplified") ||
      !reply["simplified"].is_array()) {
    throw BackendError("http backend reply lacks a 'simplified' list");
  }
  const auto& items = reply["simplified"];
  if (items.size() != texts.size()) {
    throw BackendError(fmt::format("http backend returned {} texts for {}",
                                   items.size(), texts.size()));
  }
  std::vector<RawSimplification> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].is_string()) {
      out.push_back({items[i].get<std::string>(), std::nullopt});
    } else if (items[i].is_null()) {
      out.push_back({texts[i], "backend returned null"});
    } else {
      throw BackendError(fmt::format("http backend entry {} is not a string", i));
    }
  }
  return out;
}

std::vector<RawSimplification> HttpSimplifier::RunAll(
    std::span<const std::string> texts) {
  std::vector<std::span<const std::string>> chunks;
  for (std::size_t start = 0; start < texts.size(); start += batch_size()) {
    chunks.push_back(texts.subspan(start, std::min(batch_size(), texts.size() - start)));
  }
  std::vector<std::vector<RawSimplification>> results(chunks.size());
  for (std::size_t wave = 0; wave < chunks.size(); wave += max_concurrency_) {
    const std::size_t end = std::min(chunks.size(), wave + max_concurrency_);
    std::vector<std::future<std::vector<RawSimplification>>> inflight;
    for (std::size_t c = wave; c < end; ++c) {
      inflight.push_back(std::async(std::launch::async,
                                    [this, chunk = chunks[c]] { return RunChunk(chunk); }));
    }
    // get() rethrows the first transport failure after all joins complete.
    std::exception_ptr first_error;
    for (std::size_t c = wave; c < end; ++c) {
      try {
        results[c] = inflight[c - wave].get();
      } catch (...) {
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<RawSimplification> all;
  all.reserve(texts.size());
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(all));
  return all;
}

}  // namespace tsaug
