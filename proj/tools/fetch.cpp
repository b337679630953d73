#include "fetch.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "infodd/table_io.hpp"

namespace infodd::tools {

const std::vector<RemoteFile>& monks_files() {
  static const std::vector<RemoteFile> files = {
      {"monks-1.test", "dbaa2f2d9ab28b940c21ec9dbe4caf4e05ea56f8d5e526ff62a5a96f309eb8ce"},
      {"monks-2.test", "662ece61d731a34b9e05ed1db7f47c328a9faaef422c5f0543ecb30acbc71c23"},
      {"monks-3.test", "9519159cdf8412a74d11c5bc1f1fb6e7db604f4f00ecca902508e0c2fef890ef"},
      {"monks-1.train", std::nullopt},
      {"monks-2.train", std::nullopt},
      {"monks-3.train", std::nullopt},
  };
  return files;
}

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::size_t append_body(char* data, std::size_t size, std::size_t count, void* out) {
  static_cast<std::string*>(out)->append(data, size * count);
  return size * count;
}

std::optional<std::string> download(const std::string& mirror, const std::string& name, std::string& error) {
  if (mirror.starts_with("file://") || mirror.find("://") == std::string::npos) {
    const std::filesystem::path dir = mirror.starts_with("file://") ? mirror.substr(7) : mirror;
    try {
      return read_file(dir / name);
    } catch (const std::exception& e) {
      error = e.what();
      return std::nullopt;
    }
  }
  std::string url = mirror;
  if (url.back() != '/') url += '/';
  url += name;
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), curl_easy_cleanup);
  if (!curl) {
    error = "cannot initialize libcurl";
    return std::nullopt;
  }
  std::string body;
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 10L);
  curl_easy_setopt(curl.get(), CURLOPT_TIMEOUT, 60L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, append_body);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
  if (const CURLcode rc = curl_easy_perform(curl.get()); rc != CURLE_OK) {
    error = std::string("request failed: ") + curl_easy_strerror(rc);
    return std::nullopt;
  }
  long status = 0;
  curl_easy_getinfo(curl.get(), CURLINFO_RESPONSE_CODE, &status);
  if (status != 200) {
    error = "HTTP " + std::to_string(status);
    return std::nullopt;
  }
  return body;
}

}  // namespace

std::string monks_content_digest(const std::string& text) {
  std::istringstream in(text);
  const DecisionTable table = parse_monks(in);
  std::vector<std::string> lines;
  for (const auto& row : table.rows()) {
    std::string line = std::to_string(row.output);
    for (int v : row.values) line += " " + std::to_string(v + 1);
    lines.push_back(line + "\n");
  }
  std::sort(lines.begin(), lines.end());
  std::string canonical;
  for (const auto& l : lines) canonical += l;
  return sha256_hex(canonical);
}

int fetch_monks(const FetchOptions& options, std::ostream& log) {
  std::filesystem::create_directories(options.dest);
  int failures = 0;
  for (const auto& file : monks_files()) {
    std::string error;
    const auto body = download(options.mirror, file.name, error);
    if (!body) {
      log << file.name << ": " << error << "\n";
      ++failures;
      continue;
    }
    std::string digest;
    try {
      digest = monks_content_digest(*body);
    } catch (const std::exception& e) {
      log << file.name << ": not a Monk's file (" << e.what() << ")\n";
      ++failures;
      continue;
    }
    if (options.verify && file.content_sha256 && digest != *file.content_sha256) {
      log << file.name << ": content digest " << digest << " does not match the pinned " << *file.content_sha256 << "\n";
      ++failures;
      continue;
    }
    std::ofstream(options.dest / file.name, std::ios::binary) << *body;
    log << file.name << ": " << (file.content_sha256 ? (options.verify ? "verified" : "not verified") : "unpinned")
        << " sha256 " << digest << "\n";
  }
  return failures;
}

}  // namespace infodd::tools
