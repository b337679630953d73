#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "infodd/diagram.hpp"

namespace infodd {

struct TrailStep {
  std::size_t var = 0;
  int value = 0;

  friend bool operator==(const TrailStep&, const TrailStep&) = default;
};

struct QuestionView {
  std::size_t var = 0;
  std::string variable;
  std::vector<std::string> options;
  /// Questions answered so far.
  std::size_t depth = 0;
};

/// Product reached by the dialogue, or no match at the x-terminal.
struct ResultView {
  std::optional<int> product;
  std::string label;

  bool no_match() const { return !product.has_value(); }
};

using DialogueStep = std::variant<QuestionView, ResultView>;

enum class SessionStatus { question, resolved, no_match };

class SessionError : public std::runtime_error {
 public:
  enum class Kind { invalid_value, resolved, empty_trail, not_found };

  SessionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// One question-at-a-time dialogue over a shared immutable diagram.
class Session {
 public:
  Session(std::string id, std::shared_ptr<const Diagram> diagram);

  const std::string& id() const { return id_; }
  const Diagram& diagram() const { return *diagram_; }
  NodeRef position() const { return position_; }
  const std::vector<TrailStep>& trail() const { return trail_; }

  SessionStatus status() const;
  bool resolved() const { return status() != SessionStatus::question; }

  /// Current step: the pending question or the final result.
  DialogueStep current() const;
  QuestionView question() const;
  ResultView result() const;

  /// Moves to children[value]. On error the session is unchanged.
  DialogueStep answer(int value);

  /// Drops the last answer and replays the trail from the root.
  QuestionView undo();

  /// Clears the trail.
  DialogueStep restart();

  /// Replaying the trail from the root reaches the current position.
  bool audit() const;

 private:
  NodeRef replay() const;

  std::string id_;
  std::shared_ptr<const Diagram> diagram_;
  NodeRef position_;
  std::vector<TrailStep> trail_;
};

/// In-memory sessions with idle expiry. Calls on one session are serialized
/// through a per-session mutex; distinct sessions proceed in parallel.
class SessionStore {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit SessionStore(std::chrono::seconds idle_timeout = std::chrono::minutes(30),
                        Clock clock = [] { return std::chrono::steady_clock::now(); });

  /// Returns the new session's id, a random 128-bit hex token.
  std::string create(std::shared_ptr<const Diagram> diagram);

  /// Runs `fn` on the session under its lock. Throws SessionError(not_found)
  /// for unknown or expired ids.
  template <class Fn>
  auto with(const std::string& id, Fn&& fn) -> decltype(fn(std::declval<Session&>())) {
    std::shared_ptr<Slot> slot = lookup(id);
    std::lock_guard lock(slot->mutex);
    return fn(slot->session);
  }

  bool erase(const std::string& id);

  /// Drops sessions idle longer than the timeout; returns how many.
  std::size_t expire();
  std::size_t size() const;

 private:
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    std::mutex mutex;
    Session session;
    std::chrono::steady_clock::time_point last_access;
  };

  std::shared_ptr<Slot> lookup(const std::string& id);
  std::string new_token();

  std::chrono::seconds idle_timeout_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace infodd
