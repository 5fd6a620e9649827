// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "csbc/protocol/types.hpp"
#include "csbc/qsim/chance.hpp"

namespace csbc::relativistic {

// Simulated units: distance and time with signal speed c = 1.

enum class Site : std::uint8_t { A, B, A1, B1, A2, B2 };
inline constexpr std::array<Site, 6> kSites{Site::A, Site::B, Site::A1, Site::B1, Site::A2, Site::B2};

std::string_view name(Site s) noexcept;
/// Throws std::invalid_argument for an unknown site id.
Site parse_site(std::string_view s);

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SiteConfig {
  std::map<Site, std::vector<double>> positions;
  /// d(A,B), d(A1,B1), d(A2,B2) pairwise within this factor.
  double approx_ratio = 2.0;
  /// d(A,B) < d(A,A1)/f and d(A,A1) < d(A,A2)/f.
  double separation_factor = 10.0;

  /// A=0, B=1, A1=100, B1=101, A2=10000, B2=10001 on a line.
  static SiteConfig default_line();

  /// Euclidean distance; throws std::invalid_argument for a missing site.
  double distance(Site a, Site b) const;
  /// Throws GeometryError when the separation invariants fail.
  void validate() const;
  SiteConfig scaled(double lambda) const;
};

nlohmann::json to_json(const SiteConfig& cfg);
SiteConfig site_config_from_json(const nlohmann::json& j);

enum class RelKind : std::uint8_t {
  commit_sent,
  reveal,
  coin_fixed,
  return_request,
  state_returned,
  test_done,
  msg
};
std::string_view name(RelKind k) noexcept;

struct RelEvent {
  Site site = Site::A;
  double time = 0.0;
  RelKind kind = RelKind::msg;
  /// Free-form detail ("commit_state", "pass", ...).
  std::string detail;
  /// msg events: the sending site and send time.
  std::optional<Site> from;
  double sent_at = 0.0;
};

nlohmann::json to_json(const RelEvent& e);

struct Violation {
  /// Indices into the event list.
  std::size_t first = 0;
  std::size_t second = 0;
  std::string what;
};

struct RelTranscript {
  std::vector<RelEvent> events;
  bool causality_ok = true;
  bool detection = false;
  protocol::Bit coin = protocol::Bit::Zero;
  std::vector<Violation> violations;
};

nlohmann::json to_json(const RelTranscript& t);

/// B's behavior on the commitment state: keep it untouched, or measure it
/// in the X-Z plane basis at `angle` as soon as it arrives.
struct RelBStrategy {
  enum class Kind { honest, measure };
  Kind kind = Kind::honest;
  double angle = 0.0;

  static RelBStrategy honest() { return {}; }
  static RelBStrategy measure(double angle) { return {Kind::measure, angle}; }
};

struct CoinSource {
  enum class Kind { fixed, fair };
  Kind kind = Kind::fair;
  protocol::Bit value = protocol::Bit::Zero;

  static CoinSource fixed(protocol::Bit b) { return {Kind::fixed, b}; }
  static CoinSource fair() { return {}; }
};

struct RelTiming {
  /// Time of the coin_fixed event at A.
  double t_ct = 500.0;
  /// A sends the commitment state to B at this time (before the reveal).
  double t_commit = -100.0;

  RelTiming scaled(double lambda) const { return {t_ct * lambda, t_commit * lambda}; }
};

/// Simulates the relativistic variant: commitment transfer A -> B, reveal at
/// A2 at t = 0 relayed A2 -> B2 -> B, coin fixed at A at t_ct and announced
/// to B. Coin 0: B returns the state and A tests it against |ψ_bit⟩. Coin 1:
/// B keeps the state and tests it once the relayed reveal arrives.
RelTranscript run_rel_protocol(const SiteConfig& cfg, protocol::Bit bit,
                               const std::array<qsim::Vector, 2>& commit_states,
                               const RelBStrategy& b, const CoinSource& coin, qsim::Chance& chance,
                               const RelTiming& timing = {});
RelTranscript run_rel_protocol(const SiteConfig& cfg, protocol::Bit bit,
                               const std::array<qsim::Vector, 2>& commit_states,
                               const RelBStrategy& b, const CoinSource& coin, qsim::Seed seed,
                               const RelTiming& timing = {});

/// |0⟩ and |+⟩.
std::array<qsim::Vector, 2> default_commit_states();

/// Detection probability summed over every outcome path.
double rel_detection_exact(const SiteConfig& cfg, protocol::Bit bit,
                           const std::array<qsim::Vector, 2>& commit_states,
                           const RelBStrategy& b, const CoinSource& coin,
                           const RelTiming& timing = {});

/// Deliveries faster than light and coin/reveal pairs that are not spacelike
/// separated. Events must be time-ordered.
std::vector<Violation> causality_check(const std::vector<RelEvent>& events, const SiteConfig& cfg);

/// One ping from `from` to the claimed site `to` and its echo.
struct EchoRecord {
  Site from = Site::A;
  Site to = Site::B;
  double ping_sent = 0.0;
  double echo_received = 0.0;
};

struct SeparationCheck {
  Site a = Site::A;
  Site b = Site::B;
  bool present = false;
  double round_trip = 0.0;
  double claimed_distance = 0.0;
  bool pass = false;
};

/// Pass iff the measured round trip is at least twice the claimed distance
/// (1e-9 tolerance); a pair with no echo fails. One row per unordered pair.
std::vector<SeparationCheck> verify_separations(const SiteConfig& claimed,
                                                const std::vector<EchoRecord>& echo_log);

/// Echo log for sites physically at `actual`, each responder adding its
/// own delay before echoing.
std::vector<EchoRecord> simulate_echoes(const SiteConfig& actual,
                                        const std::map<Site, double>& responder_delay = {});

nlohmann::json to_json(const std::vector<SeparationCheck>& rows);

}  // namespace csbc::relativistic
