#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "gsd3/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generalized Schmidt decomposition of three-qubit pure states"};
  app.require_subcommand(1);

  gsd3::DecomposeOptions dec;
  CLI::App* decompose =
      app.add_subcommand("decompose", "find stationary points and the canonical form");
  decompose->add_option("--in", dec.in, "state file (json)")->required();
  decompose->add_option("--out", dec.out, "report file; stdout when omitted");
  decompose->add_option("--restarts", dec.restarts, "number of random restarts")
      ->capture_default_str();
  decompose->add_option("--tol", dec.tol, "overlap convergence tolerance")
      ->capture_default_str();
  decompose->add_option("--seed", dec.seed, "restart rng seed")->capture_default_str();
  decompose->add_option("--format", dec.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  gsd3::VerifyOptions ver;
  CLI::App* verify =
      app.add_subcommand("verify", "check the necessary conditions on a coefficient tuple");
  verify
      ->add_option("--coeffs", ver.coeffs,
                   "lambda0 lambda1 lambda2 lambda3 Re(lambda4) Im(lambda4)")
      ->required();

  gsd3::WFamilyOptions wf;
  CLI::App* wfamily =
      app.add_subcommand("wfamily", "closed-form solutions for a|100>+b|010>+c|001>");
  wfamily->add_option("--a", wf.a, "first amplitude")->required();
  wfamily->add_option("--b", wf.b, "second amplitude")->required();
  wfamily->add_option("--c", wf.c, "third amplitude")->required();
  wfamily->add_flag("--renormalize", wf.renormalize, "accept unnormalized parameters");

  gsd3::ScanOptions scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "decompose a random ensemble to a dataset");
  scan_cmd->add_option("--n", scan.n, "ensemble size")->capture_default_str();
  scan_cmd->add_option("--seed", scan.seed, "base rng seed")->capture_default_str();
  scan_cmd->add_option("--out", scan.out, "dataset file (json lines)")->required();

  gsd3::OracleOptions orc;
  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force cross-check of the maximal overlap");
  oracle->add_option("--in", orc.in, "state file (json)")->required();
  oracle->add_option("--ntheta", orc.grid.n_theta, "polar grid points per qubit")
      ->capture_default_str();
  oracle->add_option("--nphi", orc.grid.n_phi, "azimuthal grid points per qubit")
      ->capture_default_str();
  oracle->add_option("--refine", orc.grid.refine_iters, "refinement sweeps")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(decompose)) return gsd3::cmd_decompose(dec);
    if (app.got_subcommand(verify)) return gsd3::cmd_verify(ver);
    if (app.got_subcommand(wfamily)) return gsd3::cmd_wfamily(wf);
    if (app.got_subcommand(scan_cmd)) return gsd3::cmd_scan(scan);
    if (app.got_subcommand(oracle)) return gsd3::cmd_oracle(orc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
