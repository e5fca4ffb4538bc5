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

#include <CLI11.hpp>

#include <iostream>

#include "tropgon/commands.hpp"

using namespace tropgon;

int main(int argc, char** argv) {
  CLI::App app{"Divisors, linear systems and gonality witnesses on tropical curves"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress the report");

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "Parse and validate workspace files");
  validate->add_option("paths", validate_paths, "Files to check")->required();

  std::string div_path, div_function;
  auto* div = app.add_subcommand("div", "Print the principal divisor of a function");
  div->add_option("file", div_path)->required();
  div->add_option("function", div_function, "Function id")->required();

  ConstructOptions construct_opts;
  auto* construct = app.add_subcommand("construct", "Build a gonality witness from a linear system");
  construct->add_option("file", construct_opts.input)->required();
  construct->add_option("-s,--system", construct_opts.system, "System id");
  construct->add_option("-o,--output", construct_opts.bundle, "Bundle file to write")->required();
  construct->add_option("--certificate", construct_opts.certificate, "Certificate file to write");

  std::string verify_path;
  std::optional<std::string> verify_certificate;
  auto* verify = app.add_subcommand("verify", "Check a witness bundle");
  verify->add_option("bundle", verify_path)->required();
  verify->add_option("--certificate", verify_certificate, "Certificate file to write");

  std::string fw_path, fw_point;
  std::optional<std::string> fw_output;
  auto* from_witness = app.add_subcommand("from-witness", "Recover the linear system of a witness bundle");
  from_witness->add_option("bundle", fw_path)->required();
  from_witness->add_option("-p,--point", fw_point, "Point of the target tree")->required();
  from_witness->add_option("-o,--output", fw_output, "System file to write");

  std::string rt_path;
  std::optional<std::string> rt_system;
  auto* roundtrip = app.add_subcommand("roundtrip", "Run a system or witness round trip");
  roundtrip->add_option("file", rt_path)->required();
  roundtrip->add_option("-s,--system", rt_system, "System id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  CommandResult r;
  if (*validate) {
    r = cmd_validate(validate_paths);
  } else if (*div) {
    r = cmd_div(div_path, div_function);
  } else if (*construct) {
    r = cmd_construct(construct_opts);
  } else if (*verify) {
    r = cmd_verify(verify_path, verify_certificate);
  } else if (*from_witness) {
    r = cmd_from_witness(fw_path, fw_point, fw_output);
  } else {
    r = cmd_roundtrip(rt_path, rt_system);
  }
  if (!quiet) std::cout << r.report;
  if (!r.error.empty()) std::cerr << "error: " << r.error << (r.error.back() == '\n' ? "" : "\n");
  return r.exit_code;
}
