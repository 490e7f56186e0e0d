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

#ifndef TSAUG_PROC_BACKEND_H_
#define TSAUG_PROC_BACKEND_H_

#include <sys/types.h>

#include <chrono>
#include <cstdint>
#include <string>

#include "tsaug/simplifier.h"

namespace tsaug {

// Drives a child process over the line protocol:
//   child -> "READY\n" once, before any request;
//   parent -> {"id": k, "text": ...} one object per line on child stdin;
//   child -> {"id": k, "text": ...} one object per line on stdout, optionally
//            with an "error" key for a per-text failure;
//   parent closes stdin to terminate; the child must exit 0.
// The child is started lazily on the first batch and serves one batch at a
// time. `timeout` bounds the handshake and any stall while awaiting replies.
class ProcSimplifier : public Simplifier {
 public:
  ProcSimplifier(std::string command, std::size_t batch_size,
                 std::chrono::milliseconds timeout);
  ~ProcSimplifier() override;

  std::string id() const override { return "proc:" + command_; }
  void Close() override;

  bool running() const { return pid_ > 0; }

 protected:
  std::vector<RawSimplification> RunChunk(std::span<const std::string> texts) override;

 private:
  void Start();
  // Reads one line from the child, waiting at most timeout_. False on EOF.
  bool ReadLine(std::string* line);
  void Terminate(bool check_status);

  std::string command_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string read_buffer_;
  std::int64_t next_id_ = 0;
};

}  // namespace tsaug

#endif  // TSAUG_PROC_BACKEND_H_
