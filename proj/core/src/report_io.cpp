#include "padicdyn/report_io.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "padicdyn/numtheory.hpp"

namespace padicdyn {

namespace {

constexpr std::size_t kOdometerTerms = 6;

using ordered_json = nlohmann::ordered_json;

// Spheres don't carry their orbit's index; recover it from the level-1
// residue of any disk center (orbits have disjoint level-1 cycles).
std::size_t owning_orbit(const DecompositionReport& report,
                         const SphereDecomposition& sd) {
  const std::uint64_t c =
      mpz_class(sd.components.at(0).disk_centers.at(0) %
                static_cast<unsigned long>(report.p))
          .get_ui();
  for (std::size_t i = 0; i < report.orbits.size(); ++i)
    for (std::uint64_t v : report.orbits[i].level1_cycle)
      if (v == c) return i;
  throw std::logic_error("report: sphere without owning orbit");
}

std::vector<std::string> odometer_strings(const MinimalComponent& comp) {
  std::vector<std::string> out;
  for (const mpz_class& t : odometer_sequence(comp, kOdometerTerms))
    out.push_back(t.get_str());
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string report_to_json(const DecompositionReport& report) {
  ordered_json j;
  j["p"] = report.p;
  j["N"] = report.precision;
  j["depth"] = report.depth;
  if (report.special_p2) j["special_p2"] = true;

  ordered_json periodic = ordered_json::array();
  for (const auto& orb : report.orbits) {
    ordered_json o;
    o["d"] = orb.d;
    o["length"] = orb.length;
    ordered_json centers = ordered_json::array();
    for (const auto& c : orb.centers) centers.push_back(c.value().get_str());
    o["centers"] = std::move(centers);
    periodic.push_back(std::move(o));
  }
  j["periodic"] = std::move(periodic);

  ordered_json minimal = ordered_json::array();
  for (const auto& sd : report.spheres) {
    const std::size_t orbit_idx = owning_orbit(report, sd);
    for (const auto& comp : sd.components) {
      ordered_json e;
      e["orbit"] = orbit_idx;
      e["sphere"] = sd.sphere_index;
      if (sd.component_count.fits_ulong_p())
        e["count_total"] = sd.component_count.get_ui();
      else
        e["count_total"] = sd.component_count.get_str();
      e["j"] = sd.j;
      e["radius_exp"] = sd.radius_exponent;
      ordered_json disks = ordered_json::array();
      for (const auto& d : comp.disk_centers) disks.push_back(d.get_str());
      e["disks"] = std::move(disks);
      e["odometer"] = odometer_strings(comp);
      e["sampled"] = comp.sampled;
      minimal.push_back(std::move(e));
    }
  }
  j["minimal"] = std::move(minimal);

  ordered_json basin;
  basin["zero_disk"] = report.basin.zero_disk;
  ordered_json tree = ordered_json::array();
  for (std::uint64_t t : report.basin.tree_residues)
    tree.push_back(std::to_string(t));
  basin["tree_residues"] = std::move(tree);
  j["basin"] = std::move(basin);

  return j.dump(2) + "\n";
}

std::string report_to_text(const DecompositionReport& report) {
  const std::string P = std::to_string(report.p);
  std::string out;

  if (report.special_p2) {
    out += "p = 2: P = {0, 1}, M = {}, B = Z_2 \\ {0, 1}\n";
    out += "  N = " + std::to_string(report.precision) + " digits\n";
    out += "  even points fall into the fixed point 0; odd units converge to "
           "the fixed point 1\n";
    return out;
  }

  const auto pd = factor_p_minus_one(report.p);
  std::uint64_t units = 0;
  for (const auto& orb : report.orbits) units += orb.length;

  out += "p = " + P + ": Z_p = P | M | B for x -> x^2\n";
  out += "  N = " + std::to_string(report.precision) +
         " digits, depth = " + std::to_string(report.depth) + ", p - 1 = 2^" +
         std::to_string(pd.k) + " * " + std::to_string(pd.m) +
         ", s = " + std::to_string(report.s) + "\n";

  out += "periodic points P: the fixed point 0 and " + std::to_string(units) +
         " units in " + std::to_string(report.orbits.size()) + " orbits\n";
  for (const auto& orb : report.orbits) {
    std::vector<std::string> cs;
    for (const auto& c : orb.centers) cs.push_back(c.value().get_str());
    out += "  orbit d=" + std::to_string(orb.d) + ", length " +
           std::to_string(orb.length) + ", centers: " + join(cs) + "\n";
  }

  out += "minimal components M:\n";
  for (const auto& sd : report.spheres) {
    out += "  orbit d=" + std::to_string(sd.orbit_d) + " (length " +
           std::to_string(sd.orbit_length) + "), sphere " +
           std::to_string(sd.sphere_index) + ": components " +
           sd.component_count.get_str() + ", disks " + std::to_string(sd.j) +
           ", radius " + P + "^-" + std::to_string(sd.radius_exponent);
    if (!sd.components.empty()) {
      const auto odo = odometer_strings(sd.components.front());
      out += ", odometer " + join(odo) + ", ...";
    }
    if (sd.sampled)
      out += " [sampled: " + std::to_string(sd.components.size()) + " of " +
             sd.component_count.get_str() + " listed]";
    out += "\n";
    for (const auto& comp : sd.components) {
      std::vector<std::string> ds;
      for (const auto& d : comp.disk_centers) ds.push_back(d.get_str());
      out += "    component " + comp.disk_centers.front().get_str() + ": " +
             join(ds) + "\n";
    }
  }

  out += "basin B:\n";
  out += "  zero disk: " + P + "*Z_" + P + " \\ {0} -> 0\n";
  std::vector<std::string> ts;
  for (std::uint64_t t : report.basin.tree_residues)
    ts.push_back(std::to_string(t));
  out += "  tree residues (" + std::to_string(ts.size()) + "): " + join(ts) +
         "\n";
  return out;
}

}  // namespace padicdyn
