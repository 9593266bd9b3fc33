// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CKKS_AUDIT_H_
#define HEFL_CKKS_AUDIT_H_

#include <cstdint>
#include <string_view>

namespace hefl::ckks {

// Which protocol role the current thread is acting as. Every decrypt() is
// counted against the active role so a run can prove the controller never
// decrypted anything.
enum class Party : int {
  kUnattributed = 0,
  kKeyAuthority,
  kController,
  kLearner,
  kEvaluator,
};

inline constexpr int kPartyCount = 5;

std::string_view party_name(Party party);

// RAII: sets the calling thread's role, restores the previous one on exit.
class PartyScope {
 public:
  explicit PartyScope(Party party);
  ~PartyScope();
  PartyScope(const PartyScope&) = delete;
  PartyScope& operator=(const PartyScope&) = delete;

 private:
  Party previous_;
};

Party current_party();

std::uint64_t decrypt_calls(Party party);
void reset_decrypt_audit();

namespace internal {
void record_decrypt();
}  // namespace internal

}  // namespace hefl::ckks

#endif  // HEFL_CKKS_AUDIT_H_
