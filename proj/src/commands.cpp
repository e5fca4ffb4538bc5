// Copyright 2026 The tropgon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tropgon/commands.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "tropgon/error.hpp"
#include "tropgon/format.hpp"
#include "tropgon/gonality.hpp"

namespace tropgon {
namespace {

template <class F>
CommandResult guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    return {kExitMalformed, "", e.what()};
  } catch (const Error& e) {
    return {kExitFailed, "", e.what()};
  } catch (const std::logic_error& e) {
    return {kExitFailed, "", std::string("internal error: ") + e.what()};
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

const GenSystem& pick_system(const Workspace& ws, const std::optional<std::string>& id) {
  if (id) return ws.system(*id);
  if (ws.systems().size() != 1) {
    throw Error("file has " + std::to_string(ws.systems().size()) + " systems; name one with --system");
  }
  return ws.systems().begin()->second.system;
}

struct Bundle {
  Morphism witness;
  Morphism retraction;
};

// A witness has to be finite; that is reported before any other defect.
Bundle bundle_maps(const Workspace& ws) {
  const MapRecord& w = ws.map("witness");
  for (std::size_t e = 0; e < w.edges.size(); ++e) {
    if (w.edges[e].slope == 0) {
      throw Error("witness: not finite: edge " + w.source->edge(static_cast<int>(e)).id + " is contracted");
    }
  }
  return {ws.morphism("witness"), ws.morphism("retraction")};
}

Modification modification_of(const Bundle& b) {
  if (!same_curve(b.retraction.source(), b.witness.source())) {
    throw Error("retraction and witness start on different curves");
  }
  return {b.retraction.target(), b.witness.source(), b.retraction};
}

std::string summary(const Certificate& c, const Curve& original) {
  Certificate head = c;
  head.checkpoints.clear();
  return to_string(head, original, original) + "checkpoints " + std::to_string(c.checkpoints.size()) + "\n";
}

}  // namespace

CommandResult cmd_validate(const std::vector<std::string>& paths) {
  CommandResult out;
  for (const auto& path : paths) {
    const CommandResult r = guarded([&] {
      const Workspace ws = load_workspace(path);
      for (const auto& [id, m] : ws.maps()) ws.morphism(id);
      CommandResult ok;
      ok.report = path + ": ok (" + std::to_string(ws.curves().size()) + " curves, " +
                  std::to_string(ws.functions().size()) + " functions, " + std::to_string(ws.divisors().size()) +
                  " divisors, " + std::to_string(ws.systems().size()) + " systems, " +
                  std::to_string(ws.maps().size()) + " maps)\n";
      return ok;
    });
    out.exit_code = std::max(out.exit_code, r.exit_code);
    out.report += r.report;
    if (!r.error.empty()) out.error += path + ": " + r.error + "\n";
  }
  return out;
}

CommandResult cmd_div(const std::string& path, const std::string& function) {
  return guarded([&] {
    const Workspace ws = load_workspace(path);
    const PLFunction& f = ws.function(function);
    if (f.is_minus_infinity()) throw Error("function " + function + " is identically -inf");
    const Divisor d = principal_divisor(f);
    const Curve& c = *f.curve();
    std::vector<std::pair<Point, std::int64_t>> terms(d.entries().begin(), d.entries().end());
    std::sort(terms.begin(), terms.end(), [&c](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return print_order_less(c, a.first, b.first);
    });
    std::string line;
    for (const auto& [p, k] : terms) {
      if (!line.empty()) line += ", ";
      line += (k > 0 ? "+" : "") + std::to_string(k) + " @ " + c.format_point(p);
    }
    CommandResult r;
    r.report = (line.empty() ? "0" : line) + "\n";
    return r;
  });
}

CommandResult cmd_construct(const ConstructOptions& opts) {
  return guarded([&] {
    const Workspace in = load_workspace(opts.input);
    const GenSystem& s = pick_system(in, opts.system);
    const Witness w = construct_witness(s);
    const std::string id = in.curve_id(s.curve());
    Workspace bundle;
    bundle.add_curve(id, s.curve());
    bundle.add_curve(id + "_modified", w.modification.modified);
    bundle.add_curve(id + "_target", w.target.curve);
    bundle.add_map("witness", w.map);
    bundle.add_map("retraction", w.modification.retraction);
    save_workspace(bundle, opts.bundle);
    if (opts.certificate) {
      write_text(*opts.certificate, to_string(w.certificate, *s.curve(), *w.modification.modified));
    }
    CommandResult r;
    r.report = summary(w.certificate, *s.curve()) + "bundle " + opts.bundle + "\n";
    return r;
  });
}

CommandResult cmd_verify(const std::string& bundle, const std::optional<std::string>& certificate) {
  return guarded([&] {
    const Workspace ws = load_workspace(bundle);
    const Bundle b = bundle_maps(ws);
    const Curve& target = *b.witness.target();
    if (!is_tree(target) || !target.is_compact()) throw Error("witness target is not a compact tree");
    const Verification v = verify_finite_harmonic(b.witness);
    if (!v.passed) throw Error("witness: " + v.failure);

    const Modification mod = modification_of(b);
    if (global_degree(mod.retraction) != 1) throw Error("retraction: degree is not 1");
    if (mod.modified->betti() != mod.original->betti()) {
      throw Error("modification changes the first Betti number from " + std::to_string(mod.original->betti()) +
                  " to " + std::to_string(mod.modified->betti()));
    }
    if (certificate) {
      Certificate cert;
      cert.degree = v.degree;
      cert.checkpoints = v.local;
      write_text(*certificate, to_string(cert, *mod.original, *mod.modified));
    }
    CommandResult r;
    r.report = "degree " + std::to_string(v.degree) + "\ncheckpoints " + std::to_string(v.local.size()) +
               "\nbundle verified\n";
    return r;
  });
}

CommandResult cmd_from_witness(const std::string& bundle, const std::string& point,
                               const std::optional<std::string>& output) {
  return guarded([&] {
    const Workspace ws = load_workspace(bundle);
    const Bundle b = bundle_maps(ws);
    const Modification mod = modification_of(b);
    const CurvePtr& tree = b.witness.target();
    const Divisor d = Divisor::point(tree, tree->parse_point(point));
    const GenSystem s = system_from_witness(mod, b.witness, d);
    Workspace out;
    out.add_curve(ws.curve_id(mod.original), s.curve());
    out.add_system("system", s);
    CommandResult r;
    if (output) {
      save_workspace(out, *output);
      r.report = "degree " + std::to_string(s.degree()) + "\ngenerators " + std::to_string(s.size()) + "\nsystem " +
                 *output + "\n";
    } else {
      r.report = print_workspace(out);
    }
    return r;
  });
}

CommandResult cmd_roundtrip(const std::string& path, const std::optional<std::string>& system) {
  return guarded([&] {
    const Workspace ws = load_workspace(path);
    RoundTrip rt;
    if (!system && ws.maps().count("witness") && ws.maps().count("retraction")) {
      const Bundle b = bundle_maps(ws);
      rt = roundtrip_witness(modification_of(b), b.witness);
    } else {
      rt = roundtrip_system(pick_system(ws, system));
    }
    CommandResult r;
    r.report = rt.report + "\n";
    if (!rt.passed) {
      r.exit_code = kExitFailed;
      r.error = "round trip failed";
    }
    return r;
  });
}

}  // namespace tropgon
