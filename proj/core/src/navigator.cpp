#include "infodd/navigator.hpp"

#include <array>
#include <cstdio>
#include <random>

namespace infodd {

Session::Session(std::string id, std::shared_ptr<const Diagram> diagram)
    : id_(std::move(id)), diagram_(std::move(diagram)) {
  if (!diagram_ || !diagram_->has_root()) throw std::invalid_argument("session needs a diagram with a root");
  position_ = diagram_->root();
}

SessionStatus Session::status() const {
  const Node& n = diagram_->node(position_);
  if (std::holds_alternative<Terminal>(n)) return SessionStatus::resolved;
  if (std::holds_alternative<XTerminal>(n)) return SessionStatus::no_match;
  return SessionStatus::question;
}

QuestionView Session::question() const {
  const auto* nt = std::get_if<NonTerminal>(&diagram_->node(position_));
  if (!nt) throw SessionError(SessionError::Kind::resolved, "session is already resolved");
  const auto& spec = diagram_->schema().variables[nt->var];
  return QuestionView{nt->var, spec.name, spec.value_labels, trail_.size()};
}

ResultView Session::result() const {
  const Node& n = diagram_->node(position_);
  if (const auto* t = std::get_if<Terminal>(&n)) {
    return ResultView{t->value, diagram_->schema().output_labels[static_cast<std::size_t>(t->value)]};
  }
  if (std::holds_alternative<XTerminal>(n)) return ResultView{std::nullopt, "no product matches your choices"};
  throw std::logic_error("session has no result yet");
}

DialogueStep Session::current() const {
  if (status() == SessionStatus::question) return question();
  return result();
}

DialogueStep Session::answer(int value) {
  const auto* nt = std::get_if<NonTerminal>(&diagram_->node(position_));
  if (!nt) throw SessionError(SessionError::Kind::resolved, "session is already resolved");
  if (value < 0 || static_cast<std::size_t>(value) >= nt->children.size()) {
    throw SessionError(SessionError::Kind::invalid_value,
                       "answer " + std::to_string(value) + " is not an option for '" +
                           diagram_->schema().variables[nt->var].name + "'");
  }
  trail_.push_back({nt->var, value});
  position_ = nt->children[static_cast<std::size_t>(value)];
  return current();
}

QuestionView Session::undo() {
  if (trail_.empty()) throw SessionError(SessionError::Kind::empty_trail, "nothing to undo");
  trail_.pop_back();
  position_ = replay();
  return question();
}

DialogueStep Session::restart() {
  trail_.clear();
  position_ = diagram_->root();
  return current();
}

NodeRef Session::replay() const {
  NodeRef at = diagram_->root();
  for (const auto& step : trail_) {
    const auto* nt = std::get_if<NonTerminal>(&diagram_->node(at));
    if (!nt || nt->var != step.var) throw std::logic_error("trail does not match the diagram");
    at = nt->children.at(static_cast<std::size_t>(step.value));
  }
  return at;
}

bool Session::audit() const {
  try {
    return replay() == position_;
  } catch (const std::exception&) {
    return false;
  }
}

SessionStore::SessionStore(std::chrono::seconds idle_timeout, Clock clock)
    : idle_timeout_(idle_timeout), clock_(std::move(clock)) {}

std::string SessionStore::new_token() {
  // std::random_device reads the OS entropy source on the supported platforms.
  static thread_local std::random_device rd;
  std::array<char, 33> buf{};
  std::snprintf(buf.data(), buf.size(), "%08x%08x%08x%08x", rd(), rd(), rd(), rd());
  return std::string(buf.data(), 32);
}

std::string SessionStore::create(std::shared_ptr<const Diagram> diagram) {
  std::lock_guard lock(mutex_);
  std::string id;
  do {
    id = new_token();
  } while (slots_.count(id) != 0);
  auto slot = std::make_shared<Slot>(Session(id, std::move(diagram)));
  slot->last_access = clock_();
  slots_.emplace(id, std::move(slot));
  return id;
}

std::shared_ptr<SessionStore::Slot> SessionStore::lookup(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = slots_.find(id);
  const auto now = clock_();
  if (it == slots_.end() || now - it->second->last_access > idle_timeout_) {
    if (it != slots_.end()) slots_.erase(it);
    throw SessionError(SessionError::Kind::not_found, "unknown session '" + id + "'");
  }
  it->second->last_access = now;
  return it->second;
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  return slots_.erase(id) > 0;
}

std::size_t SessionStore::expire() {
  std::lock_guard lock(mutex_);
  const auto now = clock_();
  std::size_t dropped = 0;
  for (auto it = slots_.begin(); it != slots_.end();) {
    if (now - it->second->last_access > idle_timeout_) {
      it = slots_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return slots_.size();
}

}  // namespace infodd
