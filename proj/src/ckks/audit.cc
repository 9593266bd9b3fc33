// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/ckks/audit.h"

#include <array>
#include <atomic>

namespace hefl::ckks {

namespace {

thread_local Party tls_party = Party::kUnattributed;
std::array<std::atomic<std::uint64_t>, kPartyCount> decrypt_counters{};

}  // namespace

std::string_view party_name(Party party) {
  switch (party) {
    case Party::kUnattributed:
      return "unattributed";
    case Party::kKeyAuthority:
      return "key-authority";
    case Party::kController:
      return "controller";
    case Party::kLearner:
      return "learner";
    case Party::kEvaluator:
      return "evaluator";
  }
  return "unknown";
}

PartyScope::PartyScope(Party party) : previous_(tls_party) { tls_party = party; }
PartyScope::~PartyScope() { tls_party = previous_; }

Party current_party() { return tls_party; }

std::uint64_t decrypt_calls(Party party) {
  return decrypt_counters[static_cast<int>(party)].load();
}

void reset_decrypt_audit() {
  for (auto& c : decrypt_counters) c.store(0);
}

namespace internal {
void record_decrypt() { decrypt_counters[static_cast<int>(tls_party)].fetch_add(1); }
}  // namespace internal

}  // namespace hefl::ckks
