#pragma once

#include <string>
#include <vector>

namespace bundlekit::cli {

// Front end behind the `bundlekit` executable. `args` excludes the program
// name. Returns the process exit code: 0 on success, 1 on a stage failure
// (message names the stage), 2 on a usage error.
int run(const std::vector<std::string>& args);

// Direct entry points for the individual subcommands, equivalent to
// run({"<name>", args...}); exposed so tests can drive them in-process.
int cmd_sparsify(const std::vector<std::string>& args);
int cmd_layout(const std::vector<std::string>& args);
int cmd_bundle(const std::vector<std::string>& args);
int cmd_metrics(const std::vector<std::string>& args);
int cmd_fbq(const std::vector<std::string>& args);
int cmd_compare(const std::vector<std::string>& args);
int cmd_render(const std::vector<std::string>& args);

}  // namespace bundlekit::cli
