#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qot {

using Json = nlohmann::json;

inline constexpr int kTranscriptVersion = 1;

enum class Party { kAlice, kBob };

std::string_view party_name(Party p);
Party other(Party p);

enum class EventKind { kClassical, kHandleTransfer, kLocal, kMeasurement, kVerdict };

std::string_view event_kind_name(EventKind k);

struct TranscriptEvent {
  int step = 0;
  EventKind kind = EventKind::kLocal;
  Party actor = Party::kAlice;
  std::string name;
  Json payload;
  bool visible_to_alice = false;
  bool visible_to_bob = false;
};

// Ordered record of one session. Classical messages and handle transfers
// are seen by both parties; local choices, measurements and the verdict
// only by their owner.
class SessionTranscript {
 public:
  void set_header(Json header) { header_ = std::move(header); }
  const Json& header() const { return header_; }

  void classical(int step, Party from, std::string name, Json payload);
  void handle_transfer(int step, Party from, std::vector<std::uint64_t> handles);
  void local(int step, Party who, std::string name, Json payload);
  void measurement(int step, Party who, std::string name, Json payload);
  void verdict(Json payload);

  const std::vector<TranscriptEvent>& events() const { return events_; }

  // JSON lines: header first, then one event per line.
  std::string to_jsonl() const;

  // Only the events `who` can see, renumbered, without the header.
  std::string view_of(Party who) const;

 private:
  void push(TranscriptEvent e);

  Json header_ = Json::object();
  std::vector<TranscriptEvent> events_;
};

// A classical message in the line-delimited JSON transport.
struct ClassicalMessage {
  int step = 0;
  Party from = Party::kAlice;
  std::string name;
  Json payload;

  friend bool operator==(const ClassicalMessage&, const ClassicalMessage&) = default;
};

std::string encode_message(const ClassicalMessage& m);
// Throws std::invalid_argument on malformed lines or a version mismatch.
ClassicalMessage decode_message(std::string_view line);

void write_message(std::ostream& out, const ClassicalMessage& m);
// nullopt at end of stream.
std::optional<ClassicalMessage> read_message(std::istream& in);

}  // namespace qot
