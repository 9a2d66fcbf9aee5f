#include "rado/solver.hpp"

#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char** environ;

namespace rado {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "SAT";
    case Verdict::Unsat: return "UNSAT";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

BackendConfig BackendConfig::parse(const std::string& spec, double budget) {
  if (spec == "internal") return internal(budget);
  const std::string prefix = "external:";
  if (spec.rfind(prefix, 0) == 0 && spec.size() > prefix.size())
    return external(spec.substr(prefix.size()), {}, budget);
  throw std::invalid_argument("backend must be 'internal' or 'external:PATH'");
}

namespace {

using Clock = std::chrono::steady_clock;

SolverVerdict solve_internal(const CnfFormula& f, const BackendConfig& cfg) {
  const auto start = Clock::now();
  sat::Solver solver(f.var_count(), cfg.seed);
  SolverVerdict out;
  out.backend = "internal";
  bool ok = true;
  for (std::size_t i = 0; i < f.clause_count() && ok; ++i) ok = solver.add_clause(f.clause(i));
  sat::Limits limits;
  limits.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(cfg.budget_seconds));
  const sat::Status st = ok ? solver.solve(limits) : sat::Status::Unsat;
  out.status = st == sat::Status::Sat     ? Verdict::Sat
               : st == sat::Status::Unsat ? Verdict::Unsat
                                          : Verdict::Unknown;
  if (out.status == Verdict::Sat) out.model = solver.model();
  const auto& s = solver.stats();
  out.stats = {s.conflicts, s.decisions, s.propagations, s.restarts,
               std::chrono::duration<double>(Clock::now() - start).count()};
  return out;
}

void revalidate(const CnfFormula& f, const SolverVerdict& v) {
  if (v.status != Verdict::Sat) return;
  if (!v.model || !model_satisfies(f, *v.model))
    throw ModelValidationError("backend " + v.backend +
                               " returned a model that falsifies the formula");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempFile {
public:
  explicit TempFile(const std::string& suffix) {
    std::string templ =
        (std::filesystem::temp_directory_path() / "rado-XXXXXX").string() + suffix;
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    int fd = mkstemps(buf.data(), static_cast<int>(suffix.size()));
    if (fd < 0) throw BackendFailure("cannot create temporary file");
    ::close(fd);
    path_ = buf.data();
  }
  ~TempFile() { std::remove(path_.c_str()); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

}  // namespace

SolverVerdict parse_competition_output(const std::string& output, int num_vars) {
  SolverVerdict v;
  std::optional<Verdict> status;
  Model model(static_cast<std::size_t>(num_vars) + 1, 0);
  bool saw_values = false;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == 'c') continue;
    if (line.rfind("s ", 0) == 0) {
      std::string s = line.substr(2);
      s.erase(0, s.find_first_not_of(' '));
      if (s == "SATISFIABLE") status = Verdict::Sat;
      else if (s == "UNSATISFIABLE") status = Verdict::Unsat;
      else if (s == "UNKNOWN") status = Verdict::Unknown;
      else throw BackendParseError("unrecognized status line: " + line, output);
      continue;
    }
    if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream vals(line.substr(1));
      long long lit;
      while (vals >> lit) {
        if (lit == 0) continue;
        long long var = lit < 0 ? -lit : lit;
        if (var > num_vars) throw BackendParseError("value line mentions unknown variable", output);
        model[static_cast<std::size_t>(var)] = lit > 0 ? 1 : -1;
        saw_values = true;
      }
      if (!vals.eof()) throw BackendParseError("malformed value line: " + line, output);
      continue;
    }
    throw BackendParseError("unexpected solver output: " + line, output);
  }
  if (!status) throw BackendParseError("no status line in solver output", output);
  v.status = *status;
  if (v.status == Verdict::Sat) {
    if (!saw_values && num_vars > 0) throw BackendParseError("SAT answer without value lines", output);
    for (std::size_t i = 1; i < model.size(); ++i)
      if (model[i] == 0) model[i] = -1;
    v.model = std::move(model);
  }
  return v;
}

std::string format_competition_output(const SolverVerdict& v) {
  std::ostringstream out;
  out << "s "
      << (v.status == Verdict::Sat     ? "SATISFIABLE"
          : v.status == Verdict::Unsat ? "UNSATISFIABLE"
                                       : "UNKNOWN")
      << '\n';
  if (v.status == Verdict::Sat && v.model) {
    const Model& m = *v.model;
    std::size_t on_line = 0;
    for (std::size_t i = 1; i < m.size(); ++i) {
      if (on_line == 0) out << "v";
      out << ' ' << (m[i] > 0 ? static_cast<long long>(i) : -static_cast<long long>(i));
      if (++on_line == 20) {
        out << '\n';
        on_line = 0;
      }
    }
    if (on_line == 0) out << "v";
    out << " 0\n";
  }
  return out.str();
}

SolverVerdict solve_external(const CnfFormula& f, const std::string& path,
                             const std::vector<std::string>& args, double budget_seconds) {
  const auto start = Clock::now();
  TempFile cnf(".cnf");
  TempFile out(".out");
  {
    std::ofstream o(cnf.path(), std::ios::binary);
    write_dimacs(f, o);
    if (!o) throw BackendFailure("cannot write temporary CNF file");
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out.path().c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
  std::vector<std::string> argv_storage{path};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  argv_storage.push_back(cnf.path());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  argv.push_back(nullptr);

  pid_t pid = 0;
  int rc = posix_spawn(&pid, path.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw BackendFailure("cannot start external solver '" + path + "': " + std::strerror(rc));

  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(budget_seconds));
  int wstatus = 0;
  bool timed_out = false;
  for (;;) {
    pid_t r = waitpid(pid, &wstatus, WNOHANG);
    if (r == pid) break;
    if (r < 0) throw BackendFailure("waitpid failed for external solver");
    if (Clock::now() >= deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &wstatus, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  SolverVerdict v;
  const std::string raw = read_file(out.path());
  if (timed_out) {
    v.status = Verdict::Unknown;
  } else {
    const bool has_status = raw.find("s ") != std::string::npos;
    const int code = WIFEXITED(wstatus) ? WEXITSTATUS(wstatus) : -1;
    // SAT-competition solvers exit with 10 / 20; anything else without a
    // status line is a failure.
    if (!has_status && code != 0 && code != 10 && code != 20)
      throw BackendFailure("external solver exited with code " + std::to_string(code) +
                           " and no status line");
    v = parse_competition_output(raw, f.var_count());
  }
  v.backend = "external:" + path;
  v.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  revalidate(f, v);
  return v;
}

SolverVerdict solve(const CnfFormula& f, const BackendConfig& cfg) {
  if (!(cfg.budget_seconds > 0)) throw std::invalid_argument("time budget must be positive");
  SolverVerdict v = cfg.kind == BackendConfig::Kind::Internal
                        ? solve_internal(f, cfg)
                        : solve_external(f, cfg.path, cfg.args, cfg.budget_seconds);
  revalidate(f, v);
  return v;
}

}  // namespace rado
