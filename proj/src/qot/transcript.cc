#include "qot/transcript.h"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace qot {

std::string_view party_name(Party p) { return p == Party::kAlice ? "alice" : "bob"; }

Party other(Party p) { return p == Party::kAlice ? Party::kBob : Party::kAlice; }

std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::kClassical: return "classical";
    case EventKind::kHandleTransfer: return "handle_transfer";
    case EventKind::kLocal: return "local";
    case EventKind::kMeasurement: return "measurement";
    case EventKind::kVerdict: return "verdict";
  }
  return "unknown";
}

namespace {

Party parse_party(const std::string& s) {
  if (s == "alice") return Party::kAlice;
  if (s == "bob") return Party::kBob;
  throw std::invalid_argument("unknown party \"" + s + "\"");
}

Json event_json(const TranscriptEvent& e, std::size_t seq) {
  Json j;
  j["v"] = kTranscriptVersion;
  j["seq"] = seq;
  j["step"] = e.step;
  j["kind"] = event_kind_name(e.kind);
  j["actor"] = party_name(e.actor);
  j["name"] = e.name;
  j["payload"] = e.payload;
  return j;
}

}  // namespace

void SessionTranscript::push(TranscriptEvent e) {
  if (!events_.empty() && e.step < events_.back().step) {
    throw std::logic_error("transcript event for step " + std::to_string(e.step) +
                           " after step " + std::to_string(events_.back().step));
  }
  events_.push_back(std::move(e));
}

void SessionTranscript::classical(int step, Party from, std::string name, Json payload) {
  push({step, EventKind::kClassical, from, std::move(name), std::move(payload), true, true});
}

void SessionTranscript::handle_transfer(int step, Party from, std::vector<std::uint64_t> handles) {
  Json payload;
  payload["to"] = party_name(other(from));
  payload["handles"] = std::move(handles);
  push({step, EventKind::kHandleTransfer, from, "handles", std::move(payload), true, true});
}

void SessionTranscript::local(int step, Party who, std::string name, Json payload) {
  push({step, EventKind::kLocal, who, std::move(name), std::move(payload),
        who == Party::kAlice, who == Party::kBob});
}

void SessionTranscript::measurement(int step, Party who, std::string name, Json payload) {
  push({step, EventKind::kMeasurement, who, std::move(name), std::move(payload),
        who == Party::kAlice, who == Party::kBob});
}

void SessionTranscript::verdict(Json payload) {
  const int step = events_.empty() ? 9 : std::max(9, events_.back().step);
  push({step, EventKind::kVerdict, Party::kBob, "verdict", std::move(payload), false, true});
}

std::string SessionTranscript::to_jsonl() const {
  Json head = header_;
  head["v"] = kTranscriptVersion;
  head["kind"] = "header";
  std::string out = head.dump() + '\n';
  for (std::size_t i = 0; i < events_.size(); ++i) out += event_json(events_[i], i).dump() + '\n';
  return out;
}

std::string SessionTranscript::view_of(Party who) const {
  std::string out;
  std::size_t seq = 0;
  for (const auto& e : events_) {
    const bool visible = who == Party::kAlice ? e.visible_to_alice : e.visible_to_bob;
    if (visible) out += event_json(e, seq++).dump() + '\n';
  }
  return out;
}

std::string encode_message(const ClassicalMessage& m) {
  Json j;
  j["v"] = kTranscriptVersion;
  j["step"] = m.step;
  j["from"] = party_name(m.from);
  j["name"] = m.name;
  j["payload"] = m.payload;
  return j.dump();
}

ClassicalMessage decode_message(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed message line: ") + e.what());
  }
  if (!j.is_object() || j.value("v", -1) != kTranscriptVersion) {
    throw std::invalid_argument("message line has missing or unsupported version");
  }
  try {
    return ClassicalMessage{j.at("step").get<int>(), parse_party(j.at("from").get<std::string>()),
                            j.at("name").get<std::string>(), j.at("payload")};
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("message line missing field: ") + e.what());
  }
}

void write_message(std::ostream& out, const ClassicalMessage& m) {
  out << encode_message(m) << '\n';
  out.flush();
}

std::optional<ClassicalMessage> read_message(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) return decode_message(line);
  }
  return std::nullopt;
}

}  // namespace qot
