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

#include "tsaug/proc_backend.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "tsaug/errors.h"

extern char** environ;

namespace tsaug {
namespace {

using Clock = std::chrono::steady_clock;

int RemainingMs(Clock::time_point deadline) {
  const auto left =
      std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() > 0 ? static_cast<int>(left.count()) : 0;
}

void SetNonBlocking(int fd) {
  const int flags = fcntl(fd, F_GETFL, 0);
  fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

// A child that dies mid-write must surface as EPIPE, not kill the parent.
void IgnoreSigpipeOnce() {
  static const bool done = [] {
    struct sigaction current {};
    sigaction(SIGPIPE, nullptr, &current);
    if (current.sa_handler == SIG_DFL) signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

}  // namespace

ProcSimplifier::ProcSimplifier(std::string command, std::size_t batch_size,
                               std::chrono::milliseconds timeout)
    : Simplifier(batch_size), command_(std::move(command)), timeout_(timeout) {}

ProcSimplifier::~ProcSimplifier() {
  try {
    Terminate(false);
  } catch (...) {
  }
}

void ProcSimplifier::Start() {
  IgnoreSigpipeOnce();
  int in_pipe[2];
  int out_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw BackendError(fmt::format("pipe: {}", std::strerror(errno)));
  }
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw BackendError(fmt::format("pipe: {}", std::strerror(errno)));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

  const char* argv[] = {"sh", "-c", command_.c_str(), nullptr};
  pid_t pid = -1;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr,
                             const_cast<char* const*>(argv), environ);
  posix_spawn_file_actions_destroy(&actions);
  close(in_pipe[0]);
  close(out_pipe[1]);
  if (rc != 0) {
    close(in_pipe[1]);
    close(out_pipe[0]);
    throw BackendError(fmt::format("cannot launch backend: {}", std::strerror(rc)));
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  SetNonBlocking(to_child_);
  SetNonBlocking(from_child_);
  read_buffer_.clear();

  std::string line;
  if (!ReadLine(&line)) {
    Terminate(false);
    throw BackendError("backend exited before READY handshake");
  }
  if (line != "READY") {
    Terminate(false);
    throw BackendError("backend sent output before READY handshake");
  }
  spdlog::debug("proc backend started (pid {})", pid_);
}

bool ProcSimplifier::ReadLine(std::string* line) {
  auto deadline = Clock::now() + timeout_;
  while (true) {
    const std::size_t nl = read_buffer_.find('\n');
    if (nl != std::string::npos) {
      line->assign(read_buffer_, 0, nl);
      if (!line->empty() && line->back() == '\r') line->pop_back();
      read_buffer_.erase(0, nl + 1);
      return true;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = poll(&pfd, 1, RemainingMs(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw BackendError(fmt::format("poll: {}", std::strerror(errno)));
    }
    if (ready == 0) {
      throw BackendError(fmt::format("backend timed out after {} ms", timeout_.count()));
    }
    char buf[65536];
    const ssize_t n = read(from_child_, buf, sizeof(buf));
    if (n > 0) {
      read_buffer_.append(buf, static_cast<std::size_t>(n));
      deadline = Clock::now() + timeout_;
    } else if (n == 0) {
      return false;
    } else if (errno != EAGAIN && errno != EINTR) {
      throw BackendError(fmt::format("read: {}", std::strerror(errno)));
    }
  }
}

std::vector<RawSimplification> ProcSimplifier::RunChunk(
    std::span<const std::string> texts) {
  if (!running()) Start();

  const std::int64_t first_id = next_id_;
  next_id_ += static_cast<std::int64_t>(texts.size());
  std::string outgoing;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    nlohmann::json req = {{"id", first_id + static_cast<std::int64_t>(i)},
                          {"text", texts[i]}};
    outgoing += req.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    outgoing.push_back('\n');
  }

  std::vector<std::optional<RawSimplification>> results(texts.size());
  std::size_t received = 0;
  std::size_t written = 0;
  auto deadline = Clock::now() + timeout_;

  auto fail = [this](const std::string& why) {
    Terminate(false);
    throw BackendError(why);
  };

  auto consume_lines = [&] {
    std::size_t nl;
    while ((nl = read_buffer_.find('\n')) != std::string::npos) {
      std::string line = read_buffer_.substr(0, nl);
      read_buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      nlohmann::json resp;
      try {
        resp = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error&) {
        fail("backend sent a malformed response line");
      }
      if (!resp.is_object() || !resp.contains("id") ||
          !resp["id"].is_number_integer()) {
        fail("backend response lacks an integer id");
      }
      const std::int64_t rid = resp["id"].get<std::int64_t>();
      if (rid < first_id || rid >= first_id + static_cast<std::int64_t>(texts.size())) {
        fail(fmt::format("backend answered unknown id {}", rid));
      }
      auto& slot = results[static_cast<std::size_t>(rid - first_id)];
      if (slot) fail(fmt::format("backend answered id {} twice", rid));
      RawSimplification raw;
      if (resp.contains("error") && !resp["error"].is_null()) {
        raw.error = resp["error"].is_string() ? resp["error"].get<std::string>()
                                              : resp["error"].dump();
        raw.text = texts[static_cast<std::size_t>(rid - first_id)];
      } else if (resp.contains("text") && resp["text"].is_string()) {
        raw.text = resp["text"].get<std::string>();
      } else {
        fail(fmt::format("backend response {} lacks text", rid));
      }
      slot = std::move(raw);
      ++received;
    }
  };

  while (received < texts.size()) {
    pollfd fds[2];
    nfds_t nfds = 0;
    fds[nfds++] = {from_child_, POLLIN, 0};
    if (written < outgoing.size()) fds[nfds++] = {to_child_, POLLOUT, 0};
    const int ready = poll(fds, nfds, RemainingMs(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      fail(fmt::format("poll: {}", std::strerror(errno)));
    }
    if (ready == 0) {
      fail(fmt::format("backend timed out: {} of {} responses received",
                       received, texts.size()));
    }
    if (nfds == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n = write(to_child_, outgoing.data() + written,
                              outgoing.size() - written);
      if (n > 0) {
        written += static_cast<std::size_t>(n);
        deadline = Clock::now() + timeout_;
      } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
        fail(fmt::format("write to backend failed: {}", std::strerror(errno)));
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char buf[65536];
      const ssize_t n = read(from_child_, buf, sizeof(buf));
      if (n > 0) {
        read_buffer_.append(buf, static_cast<std::size_t>(n));
        deadline = Clock::now() + timeout_;
        consume_lines();
      } else if (n == 0) {
        fail(fmt::format("backend closed its output: {} of {} responses received",
                         received, texts.size()));
      } else if (errno != EAGAIN && errno != EINTR) {
        fail(fmt::format("read from backend failed: {}", std::strerror(errno)));
      }
    }
  }

  std::vector<RawSimplification> out;
  out.reserve(results.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

void ProcSimplifier::Close() { Terminate(true); }

void ProcSimplifier::Terminate(bool check_status) {
  if (pid_ <= 0) return;
  if (to_child_ >= 0) {
    close(to_child_);
    to_child_ = -1;
  }
  // Drain and wait for a clean exit, then escalate.
  const auto deadline = Clock::now() + timeout_;
  int status = 0;
  pid_t done = 0;
  while ((done = waitpid(pid_, &status, WNOHANG)) == 0 && Clock::now() < deadline) {
    if (from_child_ >= 0) {
      pollfd pfd{from_child_, POLLIN, 0};
      if (poll(&pfd, 1, 10) > 0) {
        char buf[4096];
        if (read(from_child_, buf, sizeof(buf)) == 0) {
          close(from_child_);
          from_child_ = -1;
        }
      }
    } else {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  bool killed = false;
  if (done == 0) {
    kill(pid_, SIGKILL);
    waitpid(pid_, &status, 0);
    killed = true;
  }
  if (from_child_ >= 0) {
    close(from_child_);
    from_child_ = -1;
  }
  const pid_t pid = pid_;
  pid_ = -1;
  read_buffer_.clear();
  if (!check_status) return;
  if (killed) {
    throw BackendError(fmt::format("backend (pid {}) did not exit after stdin closed", pid));
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw BackendError(fmt::format("backend exited abnormally (status {})",
                                   WIFEXITED(status) ? WEXITSTATUS(status) : -1));
  }
}

}  // namespace tsaug
