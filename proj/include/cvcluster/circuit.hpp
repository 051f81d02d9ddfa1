// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// Optical netlists: data model, text format, compiler and preset schemes.
///
/// Netlist grammar (one statement per line, `#` starts a comment):
///
///   port <name>
///   input <port> vacuum
///   input <port> squeezed <R|A> r=<f> theta=<f> [loss=<f>]
///   hwp <port> deg=<f>
///   pbs <inA> <inB> -> <outT> <outR>
///   squeeze <port>:<mode> r=<f> theta=<f>
///   outputs <port>:<mode> ...
///
/// <mode> is one of H10, V10, H01, V01. Wave-plate angles are in degrees,
/// squeeze angles in radians, `loss` is the converter transmittance.
/// A PBS transmits H and reflects V: outT receives H of inA and V of inB,
/// outR receives V of inA and H of inB. `outputs` must be the last statement.

#include "cvcluster/gaussian.hpp"
#include "cvcluster/optics.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

namespace cvcluster {

enum class BeamKind { R, A };

inline CylindricalMode squeezed_slot(BeamKind kind) {
  return kind == BeamKind::R ? CylindricalMode::R_plus : CylindricalMode::A_plus;
}

struct Squeezing {
  double r = 0.0;
  double theta = 0.0;
  std::optional<double> loss;  // converter transmittance

  friend bool operator==(const Squeezing&, const Squeezing&) = default;
};

struct VacuumInput {
  friend bool operator==(const VacuumInput&, const VacuumInput&) = default;
};

struct SqueezedInput {
  BeamKind kind = BeamKind::R;
  Squeezing squeezing;

  friend bool operator==(const SqueezedInput&, const SqueezedInput&) = default;
};

struct InputDecl {
  std::string port;
  std::variant<VacuumInput, SqueezedInput> source;

  friend bool operator==(const InputDecl&, const InputDecl&) = default;
};

struct HwpElement {
  std::string port;
  double degrees = 0.0;

  friend bool operator==(const HwpElement&, const HwpElement&) = default;
};

struct PbsElement {
  std::string in_a;
  std::string in_b;
  std::string out_t;
  std::string out_r;

  friend bool operator==(const PbsElement&, const PbsElement&) = default;
};

struct SqueezeElement {
  ModeLabel mode;
  double r = 0.0;
  double theta = 0.0;

  friend bool operator==(const SqueezeElement&, const SqueezeElement&) = default;
};

using Element = std::variant<HwpElement, PbsElement, SqueezeElement>;

struct CircuitSpec {
  std::vector<std::string> ports;
  std::vector<InputDecl> inputs;
  std::vector<Element> elements;
  std::vector<ModeLabel> outputs;

  friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;
};

// ---------------------------------------------------------------------------
// Errors

enum class ParseErrorKind { syntax, unknown_element, bad_number, wiring };

inline std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::syntax: return "syntax";
    case ParseErrorKind::unknown_element: return "unknown_element";
    case ParseErrorKind::bad_number: return "bad_number";
    case ParseErrorKind::wiring: return "wiring";
  }
  return "syntax";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, std::string message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                           std::string(to_string(kind)) + " error: " + message),
        kind_(kind), line_(line), column_(column), message_(std::move(message)) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Invalid wiring in a programmatically built spec. `element()` is the
/// offending element index when the problem is tied to one.
class CircuitError : public std::invalid_argument {
 public:
  explicit CircuitError(const std::string& message, std::optional<std::size_t> element = std::nullopt)
      : std::invalid_argument(element ? "element " + std::to_string(*element) + ": " + message : message),
        element_(element) {}

  std::optional<std::size_t> element() const { return element_; }

 private:
  std::optional<std::size_t> element_;
};

namespace detail {

/// Tracks which beams are live and which register slot each occupies.
class Wiring {
 public:
  struct WiringError {
    std::string message;
  };

  void declare_port(const std::string& name) {
    fresh(name);
    live_[name] = Beam{n_slots_++, false};
    declared_.push_back(name);
  }

  void set_input(const std::string& port) {
    auto it = live_.find(port);
    if (it == live_.end() || !is_declared(port)) {
      throw WiringError{"input for undeclared port '" + port + "'"};
    }
    if (it->second.fed) throw WiringError{"port '" + port + "' already has an input"};
    it->second.fed = true;
  }

  std::size_t use(const std::string& port) const {
    auto it = live_.find(port);
    if (it == live_.end()) {
      throw WiringError{names_.contains(port) ? "port '" + port + "' was consumed by an earlier PBS"
                                              : "port '" + port + "' is not declared"};
    }
    if (!it->second.fed) throw WiringError{"port '" + port + "' has no input"};
    return it->second.slot;
  }

  /// Returns the slots of (in_a, in_b).
  std::pair<std::size_t, std::size_t> pbs(const PbsElement& e) {
    if (e.in_a == e.in_b) throw WiringError{"PBS inputs must be distinct"};
    if (e.out_t == e.out_r) throw WiringError{"PBS outputs must be distinct"};
    const std::size_t a = use(e.in_a);
    const std::size_t b = use(e.in_b);
    fresh(e.out_t);
    fresh(e.out_r);
    live_.erase(e.in_a);
    live_.erase(e.in_b);
    live_[e.out_t] = Beam{a, true};
    live_[e.out_r] = Beam{b, true};
    return {a, b};
  }

  std::size_t mode_index(const ModeLabel& label) const {
    return kModesPerPort * use(label.port) + label.local();
  }

  std::optional<std::string> unfed_port() const {
    for (const auto& name : declared_) {
      auto it = live_.find(name);
      if (it != live_.end() && !it->second.fed) return name;
    }
    return std::nullopt;
  }

  std::size_t n_slots() const { return n_slots_; }

  /// Labels of every register mode under the current live port names.
  std::vector<ModeLabel> current_labels() const {
    std::vector<ModeLabel> labels(kModesPerPort * n_slots_);
    for (const auto& [name, beam] : live_) {
      const auto modes = port_modes(name);
      for (std::size_t k = 0; k < kModesPerPort; ++k) labels[kModesPerPort * beam.slot + k] = modes[k];
    }
    return labels;
  }

 private:
  struct Beam {
    std::size_t slot;
    bool fed;
  };

  void fresh(const std::string& name) {
    if (!names_.insert(name).second) throw WiringError{"port name '" + name + "' is already in use"};
  }

  bool is_declared(const std::string& name) const {
    return std::find(declared_.begin(), declared_.end(), name) != declared_.end();
  }

  std::map<std::string, Beam> live_;
  std::set<std::string> names_;
  std::vector<std::string> declared_;
  std::size_t n_slots_ = 0;
};

inline std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

struct Token {
  std::string text;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; };
  while (i < line.size()) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    if (line.compare(i, 2, "->") == 0) {
      tokens.push_back({"->", i + 1});
      i += 2;
      continue;
    }
    if (line[i] == '=' || line[i] == ':') {
      tokens.push_back({std::string(1, line[i]), i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i]) && line[i] != '=' && line[i] != ':' &&
           line.compare(i, 2, "->") != 0) {
      ++i;
    }
    tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return tokens;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0])) return false;
  for (char c : s) {
    if (!alpha(c) && !digit(c)) return false;
  }
  return true;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line, std::size_t line_length)
      : tokens_(std::move(tokens)), line_(line), end_column_(line_length + 1) {}

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& message) const {
    throw ParseError(kind, line_, column(), message);
  }

  [[noreturn]] void fail_at(const Token& token, ParseErrorKind kind, const std::string& message) const {
    throw ParseError(kind, line_, token.column, message);
  }

  bool done() const { return pos_ >= tokens_.size(); }
  std::size_t column() const { return done() ? end_column_ : tokens_[pos_].column; }
  const Token& peek() const { return tokens_[pos_]; }

  const Token& next(const std::string& what) {
    if (done()) fail(ParseErrorKind::syntax, "expected " + what);
    return tokens_[pos_++];
  }

  void expect(std::string_view text) {
    const Token& t = next("'" + std::string(text) + "'");
    if (t.text != text) fail_at(t, ParseErrorKind::syntax, "expected '" + std::string(text) + "'");
  }

  const Token& identifier(const std::string& what) {
    const Token& t = next(what);
    if (!is_identifier(t.text)) fail_at(t, ParseErrorKind::syntax, "invalid " + what + " '" + t.text + "'");
    return t;
  }

  ModeLabel mode_label() {
    const Token& port = identifier("port name");
    expect(":");
    const Token& basis = next("mode name (H10, V10, H01, V01)");
    auto parsed = parse_basis_name(basis.text);
    if (!parsed) fail_at(basis, ParseErrorKind::syntax, "unknown mode '" + basis.text + "'");
    return ModeLabel{port.text, parsed->first, parsed->second};
  }

  double number(const Token& t) const {
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      fail_at(t, ParseErrorKind::bad_number, "invalid number '" + t.text + "'");
    }
    return value;
  }

  /// Reads `key=value` pairs until end of line. `required` keys must appear.
  std::map<std::string, std::pair<double, Token>> key_values(const std::set<std::string>& allowed,
                                                             const std::set<std::string>& required) {
    std::map<std::string, std::pair<double, Token>> out;
    while (!done()) {
      const Token& key = next("parameter");
      if (!allowed.contains(key.text)) fail_at(key, ParseErrorKind::syntax, "unknown parameter '" + key.text + "'");
      if (out.contains(key.text)) fail_at(key, ParseErrorKind::syntax, "duplicate parameter '" + key.text + "'");
      expect("=");
      const Token& value = next("number");
      out.emplace(key.text, std::make_pair(number(value), value));
    }
    for (const auto& key : required) {
      if (!out.contains(key)) fail(ParseErrorKind::syntax, "missing parameter '" + key + "='");
    }
    return out;
  }

  void finish() {
    if (!done()) fail_at(peek(), ParseErrorKind::syntax, "unexpected '" + peek().text + "'");
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t end_column_;
};

}  // namespace detail

// ---------------------------------------------------------------------------

/// Parses netlist text. Throws ParseError on the first problem found.
inline CircuitSpec parse_circuit(std::string_view text) {
  using detail::LineParser;
  CircuitSpec spec;
  detail::Wiring wiring;
  std::map<std::string, std::size_t> port_lines;
  bool have_outputs = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    LineParser p(detail::tokenize(raw), line_no, raw.size());
    if (p.done()) continue;
    const detail::Token head = p.next("statement");

    auto wire = [&](const detail::Token& at, auto&& action) {
      try {
        return action();
      } catch (const detail::Wiring::WiringError& e) {
        p.fail_at(at, ParseErrorKind::wiring, e.message);
      }
    };

    if (have_outputs) p.fail_at(head, ParseErrorKind::syntax, "statement after 'outputs'");

    if (head.text == "port") {
      const detail::Token name = p.identifier("port name");
      p.finish();
      wire(name, [&] { wiring.declare_port(name.text); });
      port_lines[name.text] = line_no;
      spec.ports.push_back(name.text);
    } else if (head.text == "input") {
      const detail::Token port = p.identifier("port name");
      const detail::Token source = p.next("'vacuum' or 'squeezed'");
      InputDecl decl{port.text, VacuumInput{}};
      if (source.text == "vacuum") {
        p.finish();
      } else if (source.text == "squeezed") {
        const detail::Token kind = p.next("beam kind R or A");
        SqueezedInput in;
        if (kind.text == "R") in.kind = BeamKind::R;
        else if (kind.text == "A") in.kind = BeamKind::A;
        else p.fail_at(kind, ParseErrorKind::syntax, "beam kind must be R or A, got '" + kind.text + "'");
        auto kv = p.key_values({"r", "theta", "loss"}, {"r", "theta"});
        const auto& [r, r_tok] = kv.at("r");
        if (r < 0.0) p.fail_at(r_tok, ParseErrorKind::bad_number, "squeeze magnitude must be non-negative");
        in.squeezing.r = r;
        in.squeezing.theta = kv.at("theta").first;
        if (auto it = kv.find("loss"); it != kv.end()) {
          const double t = it->second.first;
          if (t < 0.0 || t > 1.0) p.fail_at(it->second.second, ParseErrorKind::bad_number, "loss transmittance must lie in [0, 1]");
          in.squeezing.loss = t;
        }
        decl.source = in;
      } else {
        p.fail_at(source, ParseErrorKind::syntax, "expected 'vacuum' or 'squeezed', got '" + source.text + "'");
      }
      wire(port, [&] { wiring.set_input(port.text); });
      spec.inputs.push_back(std::move(decl));
    } else if (head.text == "hwp") {
      const detail::Token port = p.identifier("port name");
      auto kv = p.key_values({"deg"}, {"deg"});
      wire(port, [&] { wiring.use(port.text); });
      spec.elements.emplace_back(HwpElement{port.text, kv.at("deg").first});
    } else if (head.text == "pbs") {
      PbsElement e;
      e.in_a = p.identifier("input port").text;
      e.in_b = p.identifier("input port").text;
      p.expect("->");
      e.out_t = p.identifier("output port").text;
      e.out_r = p.identifier("output port").text;
      p.finish();
      wire(head, [&] { wiring.pbs(e); });
      spec.elements.emplace_back(std::move(e));
    } else if (head.text == "squeeze") {
      const detail::Token at = p.peek();
      SqueezeElement e;
      e.mode = p.mode_label();
      auto kv = p.key_values({"r", "theta"}, {"r", "theta"});
      const auto& [r, r_tok] = kv.at("r");
      if (r < 0.0) p.fail_at(r_tok, ParseErrorKind::bad_number, "squeeze magnitude must be non-negative");
      e.r = r;
      e.theta = kv.at("theta").first;
      wire(at, [&] { wiring.use(e.mode.port); });
      spec.elements.emplace_back(std::move(e));
    } else if (head.text == "outputs") {
      std::set<ModeLabel> seen;
      while (!p.done()) {
        const detail::Token at = p.peek();
        ModeLabel label = p.mode_label();
        wire(at, [&] { wiring.use(label.port); });
        if (!seen.insert(label).second) p.fail_at(at, ParseErrorKind::wiring, "duplicate output '" + label.str() + "'");
        spec.outputs.push_back(std::move(label));
      }
      if (spec.outputs.empty()) p.fail(ParseErrorKind::syntax, "'outputs' needs at least one mode");
      have_outputs = true;
    } else {
      p.fail_at(head, ParseErrorKind::unknown_element, "unknown statement '" + head.text + "'");
    }
  }

  if (auto unfed = wiring.unfed_port()) {
    throw ParseError(ParseErrorKind::wiring, port_lines.at(*unfed), 1, "port '" + *unfed + "' has no input");
  }
  if (!have_outputs) {
    throw ParseError(ParseErrorKind::wiring, std::max<std::size_t>(line_no, 1), 1, "no outputs declared");
  }
  return spec;
}

/// Canonical text: ports, inputs, elements, outputs; numbers in shortest
/// round-trip form.
inline std::string serialize_circuit(const CircuitSpec& spec) {
  using detail::format_number;
  std::ostringstream out;
  for (const auto& port : spec.ports) out << "port " << port << '\n';
  for (const auto& in : spec.inputs) {
    out << "input " << in.port << ' ';
    if (const auto* sq = std::get_if<SqueezedInput>(&in.source)) {
      out << "squeezed " << (sq->kind == BeamKind::R ? 'R' : 'A') << " r=" << format_number(sq->squeezing.r)
          << " theta=" << format_number(sq->squeezing.theta);
      if (sq->squeezing.loss) out << " loss=" << format_number(*sq->squeezing.loss);
    } else {
      out << "vacuum";
    }
    out << '\n';
  }
  for (const auto& element : spec.elements) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, HwpElement>) {
            out << "hwp " << e.port << " deg=" << format_number(e.degrees) << '\n';
          } else if constexpr (std::is_same_v<T, PbsElement>) {
            out << "pbs " << e.in_a << ' ' << e.in_b << " -> " << e.out_t << ' ' << e.out_r << '\n';
          } else {
            out << "squeeze " << e.mode.str() << " r=" << format_number(e.r) << " theta=" << format_number(e.theta)
                << '\n';
          }
        },
        element);
  }
  if (!spec.outputs.empty()) {
    out << "outputs";
    for (const auto& label : spec.outputs) out << ' ' << label.str();
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

struct CompiledCircuit {
  SymplecticMap map;
  /// Every register mode before the first element, named by declared ports.
  std::vector<ModeLabel> input_modes;
  /// Every register mode after the last element, named by live ports.
  std::vector<ModeLabel> final_modes;
  /// Register positions of the declared outputs, in declared order.
  std::vector<std::size_t> output_indices;
};

inline CompiledCircuit compile_circuit(const CircuitSpec& spec) {
  detail::Wiring wiring;
  auto guard = [](std::optional<std::size_t> element, auto&& action) {
    try {
      return action();
    } catch (const detail::Wiring::WiringError& e) {
      throw CircuitError(e.message, element);
    }
  };

  for (const auto& port : spec.ports) guard(std::nullopt, [&] { wiring.declare_port(port); });
  for (const auto& in : spec.inputs) guard(std::nullopt, [&] { wiring.set_input(in.port); });
  if (auto unfed = wiring.unfed_port()) throw CircuitError("port '" + *unfed + "' has no input");
  if (wiring.n_slots() == 0) throw CircuitError("circuit declares no ports");

  const std::vector<ModeLabel> input_modes = wiring.current_labels();
  const std::size_t n_ports = wiring.n_slots();
  const std::size_t n_modes = kModesPerPort * n_ports;

  std::vector<SymplecticMap> maps;
  for (std::size_t i = 0; i < spec.elements.size(); ++i) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, HwpElement>) {
            const std::size_t slot = guard(i, [&] { return wiring.use(e.port); });
            if (!std::isfinite(e.degrees)) throw CircuitError("wave plate angle must be finite", i);
            const SymplecticMap plate = hwp_map(e.degrees * std::numbers::pi / 180.0);
            for (Profile profile : {Profile::TEM10, Profile::TEM01}) {
              maps.push_back(embed_map(plate,
                                       {kModesPerPort * slot + local_index(profile, Polarization::H),
                                        kModesPerPort * slot + local_index(profile, Polarization::V)},
                                       n_modes));
            }
          } else if constexpr (std::is_same_v<T, PbsElement>) {
            const auto [a, b] = guard(i, [&] { return wiring.pbs(e); });
            maps.push_back(pbs_map(a, b, n_ports));
          } else {
            const std::size_t mode = guard(i, [&] { return wiring.mode_index(e.mode); });
            SqueezeParams params = [&] {
              try {
                return SqueezeParams(e.r, e.theta);
              } catch (const std::invalid_argument& ex) {
                throw CircuitError(ex.what(), i);
              }
            }();
            maps.push_back(embed_map(single_mode_squeezer(params), {mode}, n_modes));
          }
        },
        spec.elements[i]);
  }

  if (spec.outputs.empty()) throw CircuitError("no outputs declared");
  std::vector<std::size_t> output_indices;
  std::set<std::size_t> seen;
  for (const auto& label : spec.outputs) {
    const std::size_t idx = guard(std::nullopt, [&] { return wiring.mode_index(label); });
    if (!seen.insert(idx).second) throw CircuitError("duplicate output '" + label.str() + "'");
    output_indices.push_back(idx);
  }

  SymplecticMap total = maps.empty() ? SymplecticMap::identity(n_modes) : compose(maps);
  return CompiledCircuit{std::move(total), input_modes, wiring.current_labels(), std::move(output_indices)};
}

/// Joint input state over `compiled.input_modes` (register order).
inline GaussianState prepare_inputs(const CircuitSpec& spec) {
  std::vector<GaussianState> beams;
  for (const auto& port : spec.ports) {
    auto it = std::find_if(spec.inputs.begin(), spec.inputs.end(), [&](const InputDecl& d) { return d.port == port; });
    if (it == spec.inputs.end()) throw CircuitError("port '" + port + "' has no input");
    if (const auto* sq = std::get_if<SqueezedInput>(&it->source)) {
      beams.push_back(prepare_squeezed_cylindrical(squeezed_slot(sq->kind),
                                                   SqueezeParams(sq->squeezing.r, sq->squeezing.theta),
                                                   sq->squeezing.loss));
    } else {
      beams.push_back(vacuum_state(kModesPerPort));
    }
  }
  if (beams.empty()) throw CircuitError("circuit declares no ports");
  return direct_sum(beams);
}

/// Full register state after the circuit (ordering: compiled.final_modes).
inline GaussianState run_circuit_register(const CircuitSpec& spec, const CompiledCircuit& compiled) {
  return apply_symplectic(prepare_inputs(spec), compiled.map);
}

/// State of the declared outputs, in declared order.
inline GaussianState run_circuit(const CircuitSpec& spec) {
  const CompiledCircuit compiled = compile_circuit(spec);
  return select_modes(run_circuit_register(spec, compiled), compiled.output_indices);
}

// ---------------------------------------------------------------------------
// Preset schemes

/// One squeezed cylindrical beam split into its four basis modes: a PBS
/// separates H and V, each arm passes a half-wave plate and a second PBS.
/// The V arm's plate sits at -22.5 deg (22.5 deg from the arm's own
/// polarization) so that an azimuthal input gives equal-sign couplings
/// between every pair of outputs.
inline CircuitSpec scheme1_circuit(BeamKind kind, const Squeezing& squeezing = {}) {
  CircuitSpec spec;
  spec.ports = {"beam", "vac1", "vac2", "vac3"};
  spec.inputs = {InputDecl{"beam", SqueezedInput{kind, squeezing}}, InputDecl{"vac1", VacuumInput{}},
                 InputDecl{"vac2", VacuumInput{}}, InputDecl{"vac3", VacuumInput{}}};
  spec.elements = {
      PbsElement{"beam", "vac1", "h", "v"},
      HwpElement{"h", 22.5},
      HwpElement{"v", -22.5},
      PbsElement{"h", "vac2", "out1", "out2"},
      PbsElement{"v", "vac3", "out3", "out4"},
  };
  auto label = [](const char* port, Profile profile, Polarization pol) { return ModeLabel{port, profile, pol}; };
  using enum Profile;
  using enum Polarization;
  // The H arm carries the beam's horizontal component: H10 for a radial
  // beam, H01 for an azimuthal one.
  if (kind == BeamKind::R) {
    spec.outputs = {label("out1", TEM10, H), label("out2", TEM10, V), label("out3", TEM01, H),
                    label("out4", TEM01, V)};
  } else {
    spec.outputs = {label("out3", TEM10, H), label("out4", TEM10, V), label("out1", TEM01, H),
                    label("out2", TEM01, V)};
  }
  return spec;
}

/// A radial and an azimuthal beam, each split on a PBS. The two TEM01
/// components are combined on a PBS, mixed by a 22.5 deg half-wave plate and
/// separated again; the TEM10 components go straight to the outputs.
inline CircuitSpec scheme2_circuit(const Squeezing& radial = {}, const Squeezing& azimuthal = {}) {
  CircuitSpec spec;
  spec.ports = {"radial", "azimuthal", "vac1", "vac2", "vac3"};
  spec.inputs = {InputDecl{"radial", SqueezedInput{BeamKind::R, radial}},
                 InputDecl{"azimuthal", SqueezedInput{BeamKind::A, azimuthal}}, InputDecl{"vac1", VacuumInput{}},
                 InputDecl{"vac2", VacuumInput{}}, InputDecl{"vac3", VacuumInput{}}};
  spec.elements = {
      PbsElement{"radial", "vac1", "rh", "rv"},
      PbsElement{"azimuthal", "vac2", "ah", "av"},
      PbsElement{"ah", "rv", "mix", "dump"},
      HwpElement{"mix", 22.5},
      PbsElement{"mix", "vac3", "out3", "out4"},
  };
  using enum Profile;
  using enum Polarization;
  spec.outputs = {ModeLabel{"rh", TEM10, H}, ModeLabel{"av", TEM10, V}, ModeLabel{"out3", TEM01, H},
                  ModeLabel{"out4", TEM01, V}};
  return spec;
}

}  // namespace cvcluster
