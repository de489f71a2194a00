#pragma once

// Cover documents (JSON), output records, and the command dispatcher behind
// the `whitdim` executable.

#include "whitdim/cover.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace whitdim::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* version = "0.1.0";

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_malformed = 2,
  exit_constraint = 3,
  exit_not_general_position = 4,
};

int exit_code_for(ErrorKind kind);

/// Raw cover file contents; matrices are row-major.
struct CoverDocument {
  std::size_t rank = 0;
  IntMat roots;
  IntMat coroots;
  std::vector<std::size_t> simple;
  std::optional<IntMat> frobenius;
  IntMat bq;
  Int n;
  Int q;
};

/// Shape-level parsing; failures are ErrorKind::malformed.
CoverDocument parse_cover_document(const Json& j);
Json to_json(const CoverDocument& doc);
/// Builds and fully validates the cover; invariant failures are ErrorKind::constraint.
CoverSpec to_cover(const CoverDocument& doc);
CoverSpec load_cover_file(const std::string& path);

struct OutputRecord {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::string version = cli::version;

  Json to_json() const;
  static OutputRecord from_json(const Json& j);
  std::string to_text() const;
  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
Json json_int(const Int& v);
Json json_vec(const IntVec& v);
Json json_mat(const IntMat& m);

OutputRecord run_info(const CoverSpec& cover, const std::string& source);
OutputRecord run_residual(const CoverSpec& cover, const std::string& source, const std::string& point);
OutputRecord run_whittaker(std::size_t r, const Int& q, const Int& n, const Int& bold_p,
                           const Int& bold_q, const Int& a, bool oracle);
OutputRecord run_table(std::size_t r, const Int& q, const Int& n, const Int& bold_p, const Int& bold_q);

/// Full command-line entry point. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace whitdim::cli
