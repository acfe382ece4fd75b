#pragma once
// Shared test plumbing: locating pinned inputs, slurping files, and (for the
// CLI-driving suites) running the tool as a subprocess.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string data_path(const std::string& name) {
#ifdef TBAND_DATA_DIR
    return std::string(TBAND_DATA_DIR) + "/" + name;
#else
    return "data/" + name;
#endif
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

// Run a shell command, capture stdout and the exit code. Tests that care
// about stderr redirect it inside `cmd`.
inline CommandResult run_command(const std::string& cmd) {
    CommandResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace testutil
