#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace infodd::tools {

/// A dataset file on the mirror. Test sets carry a pinned digest of their
/// parsed content; training sets are not pinned.
struct RemoteFile {
  std::string name;
  std::optional<std::string> content_sha256;
};

const std::vector<RemoteFile>& monks_files();

inline constexpr const char* kDefaultMirror =
    "https://archive.ics.uci.edu/ml/machine-learning-databases/monks-problems/";

/// SHA-256 over the sorted "class a1 .. a6" lines of a Monk's file, so that
/// whitespace and row order on the mirror do not matter.
std::string monks_content_digest(const std::string& text);

struct FetchOptions {
  std::string mirror = kDefaultMirror;
  std::filesystem::path dest;
  bool verify = true;
};

/// Downloads every Monk's file into dest. The mirror is an http(s) URL or a
/// local directory. Returns the number of files that failed to download or
/// verify.
int fetch_monks(const FetchOptions& options, std::ostream& log);

}  // namespace infodd::tools
