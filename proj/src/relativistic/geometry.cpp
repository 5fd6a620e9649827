// Copyright 2026 The csbc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "csbc/relativistic/relativistic.hpp"

namespace csbc::relativistic {

std::string_view name(Site s) noexcept {
  switch (s) {
    case Site::A: return "A";
    case Site::B: return "B";
    case Site::A1: return "A1";
    case Site::B1: return "B1";
    case Site::A2: return "A2";
    case Site::B2: return "B2";
  }
  return "?";
}

Site parse_site(std::string_view s) {
  for (Site site : kSites) {
    if (name(site) == s) return site;
  }
  throw std::invalid_argument("unknown site id '" + std::string(s) + "'");
}

SiteConfig SiteConfig::default_line() {
  SiteConfig cfg;
  cfg.positions = {{Site::A, {0.0}},      {Site::B, {1.0}},      {Site::A1, {100.0}},
                   {Site::B1, {101.0}},   {Site::A2, {10000.0}}, {Site::B2, {10001.0}}};
  return cfg;
}

double SiteConfig::distance(Site a, Site b) const {
  const auto ia = positions.find(a);
  const auto ib = positions.find(b);
  if (ia == positions.end() || ib == positions.end()) {
    throw std::invalid_argument("no position for site " +
                                std::string(name(ia == positions.end() ? a : b)));
  }
  const auto& x = ia->second;
  const auto& y = ib->second;
  if (x.size() != y.size()) throw GeometryError("site coordinates differ in dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

void SiteConfig::validate() const {
  for (Site s : kSites) {
    if (!positions.contains(s)) throw GeometryError("missing position for site " + std::string(name(s)));
  }
  const std::size_t dim = positions.at(Site::A).size();
  if (dim == 0) throw GeometryError("coordinates must have at least one component");
  for (const auto& [s, x] : positions) {
    if (x.size() != dim) throw GeometryError("site coordinates differ in dimension");
    for (double c : x) {
      if (!std::isfinite(c)) throw GeometryError("non-finite coordinate for site " + std::string(name(s)));
    }
  }
  if (!(approx_ratio >= 1.0) || !(separation_factor > 1.0)) {
    throw GeometryError("approx_ratio must be >= 1 and separation_factor > 1");
  }
  const double pairs[3] = {distance(Site::A, Site::B), distance(Site::A1, Site::B1),
                           distance(Site::A2, Site::B2)};
  for (double d : pairs) {
    if (!(d > 0.0)) throw GeometryError("paired sites must be at distinct positions");
  }
  const auto [lo, hi] = std::minmax_element(std::begin(pairs), std::end(pairs));
  if (*hi > approx_ratio * *lo) {
    throw GeometryError("d(A,B), d(A1,B1) and d(A2,B2) must agree within a factor of " +
                        std::to_string(approx_ratio));
  }
  if (!(pairs[0] * separation_factor < distance(Site::A, Site::A1))) {
    throw GeometryError("d(A,B) must be much smaller than d(A,A1)");
  }
  if (!(distance(Site::A, Site::A1) * separation_factor < distance(Site::A, Site::A2))) {
    throw GeometryError("d(A,A1) must be much smaller than d(A,A2)");
  }
}

SiteConfig SiteConfig::scaled(double lambda) const {
  SiteConfig out = *this;
  for (auto& [s, x] : out.positions) {
    for (double& c : x) c *= lambda;
  }
  return out;
}

nlohmann::json to_json(const SiteConfig& cfg) {
  nlohmann::json pos = nlohmann::json::object();
  for (const auto& [s, x] : cfg.positions) pos[std::string(name(s))] = x;
  return {{"positions", std::move(pos)},
          {"approx_ratio", cfg.approx_ratio},
          {"separation_factor", cfg.separation_factor}};
}

SiteConfig site_config_from_json(const nlohmann::json& j) {
  SiteConfig cfg;
  if (!j.is_object() || !j.contains("positions") || !j["positions"].is_object()) {
    throw std::invalid_argument("positions: must be an object of site -> coordinates");
  }
  for (const auto& [key, value] : j["positions"].items()) {
    const Site s = parse_site(key);
    if (value.is_number()) {
      cfg.positions[s] = {value.get<double>()};
    } else if (value.is_array() && std::all_of(value.begin(), value.end(),
                                               [](const auto& v) { return v.is_number(); })) {
      cfg.positions[s] = value.get<std::vector<double>>();
    } else {
      throw std::invalid_argument("positions." + key + ": must be a number or list of numbers");
    }
  }
  if (j.contains("approx_ratio")) cfg.approx_ratio = j["approx_ratio"].get<double>();
  if (j.contains("separation_factor")) cfg.separation_factor = j["separation_factor"].get<double>();
  return cfg;
}

std::vector<SeparationCheck> verify_separations(const SiteConfig& claimed,
                                                const std::vector<EchoRecord>& echo_log) {
  std::vector<SeparationCheck> rows;
  for (std::size_t i = 0; i < kSites.size(); ++i) {
    for (std::size_t j = i + 1; j < kSites.size(); ++j) {
      SeparationCheck row;
      row.a = kSites[i];
      row.b = kSites[j];
      row.claimed_distance = claimed.distance(row.a, row.b);
      row.round_trip = std::numeric_limits<double>::infinity();
      for (const auto& e : echo_log) {
        const bool match = (e.from == row.a && e.to == row.b) || (e.from == row.b && e.to == row.a);
        if (!match) continue;
        row.present = true;
        row.round_trip = std::min(row.round_trip, e.echo_received - e.ping_sent);
      }
      row.pass = row.present && row.round_trip >= 2.0 * row.claimed_distance - 1e-9;
      if (!row.present) row.round_trip = 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<EchoRecord> simulate_echoes(const SiteConfig& actual,
                                        const std::map<Site, double>& responder_delay) {
  std::vector<EchoRecord> log;
  for (std::size_t i = 0; i < kSites.size(); ++i) {
    for (std::size_t j = i + 1; j < kSites.size(); ++j) {
      const Site from = kSites[i];
      const Site to = kSites[j];
      const auto it = responder_delay.find(to);
      const double delay = it == responder_delay.end() ? 0.0 : it->second;
      log.push_back({from, to, 0.0, 2.0 * actual.distance(from, to) + delay});
    }
  }
  return log;
}

nlohmann::json to_json(const std::vector<SeparationCheck>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"a", name(r.a)},
                   {"b", name(r.b)},
                   {"present", r.present},
                   {"round_trip", r.round_trip},
                   {"claimed_distance", r.claimed_distance},
                   {"pass", r.pass}});
  }
  return out;
}

}  // namespace csbc::relativistic
