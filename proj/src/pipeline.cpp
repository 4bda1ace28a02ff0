#include "mixtag/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mixtag/errors.hpp"
#include "mixtag/features.hpp"

namespace fs = std::filesystem;

namespace mixtag {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error while reading '" + path + "'");
  return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw DataError("error while writing '" + path + "'");
}

namespace {

bool has_content(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return false;
  std::string text = read_file(path);
  return text.find_first_not_of(" \t\r\n") != std::string::npos;
}

Lexicon load_language_lexicon(const std::string& spec,
                              const std::string& code) {
  auto load_as = [&code, &spec](std::string_view kind,
                                const std::string& path) {
    std::string text = read_file(path);
    try {
      if (kind == "freq") return load_frequency_list(text, code);
      if (kind == "pairs") return load_pair_list(text, code);
      return load_line_list(text, code, true);
    } catch (const DataError& e) {
      throw DataError("lexicon '" + spec + "': " + e.what());
    }
  };
  if (spec.rfind("freq:", 0) == 0) return load_as("freq", spec.substr(5));
  if (spec.rfind("pairs:", 0) == 0) return load_as("pairs", spec.substr(6));
  if (spec.rfind("list:", 0) == 0) return load_as("list", spec.substr(5));
  return load_as("list", spec);
}

}  // namespace

ResourceBundle load_resources(const ResourceSpec& spec, std::ostream& warn) {
  ResourceBundle bundle;
  const auto& codes = LabelSet::language_codes();
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::string& code = codes[i];
    bundle.per_language[i] = Lexicon(code, true);
    if (!spec.lexicons[i].empty()) {
      bundle.per_language[i] = load_language_lexicon(spec.lexicons[i], code);
      continue;
    }
    if (!spec.wordlists_dir.empty()) {
      std::string path = spec.wordlists_dir + "/wordlist." + code + ".txt";
      if (has_content(path)) {
        bundle.per_language[i] = load_line_list(read_file(path), code, true);
        continue;
      }
    }
    warn << "warning: no " << code << " lexicon; its LEX column stays 0\n";
  }

  if (!spec.emoticons.empty()) {
    bundle.emoticons = load_line_list(read_file(spec.emoticons), "emoticon",
                                      /*case_folded=*/false);
  } else {
    warn << "warning: no emoticon list; the emoticon flag stays 0\n";
  }

  if (!spec.gazetteer.empty()) {
    bundle.gazetteer =
        load_line_list(read_file(spec.gazetteer), "gazetteer", true);
  } else {
    std::string path = spec.wordlists_dir + "/gazetteer.txt";
    if (!spec.wordlists_dir.empty() && has_content(path)) {
      bundle.gazetteer = load_line_list(read_file(path), "gazetteer", true);
    } else {
      warn << "warning: no gazetteer; the NE lookup flag stays 0\n";
    }
  }
  return bundle;
}

LabelSet parse_label_csv(const std::string& csv) {
  if (csv.empty()) return LabelSet::default_set();
  std::vector<std::string> codes;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    std::string code = comma == std::string::npos
                           ? csv.substr(start)
                           : csv.substr(start, comma - start);
    codes.push_back(std::move(code));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return LabelSet(std::move(codes));
}

TemplateSet load_templates(const std::string& spec) {
  if (spec.empty() || spec == "default") return default_template_set();
  TemplateSet templates = parse_templates(read_file(spec));
  templates.validate_columns(kObservationColumns);
  return templates;
}

void write_wordlist_files(const LabeledCorpus& corpus,
                          const std::string& out_dir, std::ostream& info) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create directory '" + out_dir + "'");

  auto dump = [&out_dir, &info](const Lexicon& lex, const std::string& name) {
    std::string content;
    for (const std::string& entry : lex.sorted_entries()) {
      content += entry;
      content += '\n';
    }
    std::string path = out_dir + "/" + name;
    write_file(path, content);
    info << path << ": " << lex.size() << " entries\n";
  };

  std::map<std::string, Lexicon> lists = build_wordlists_from_corpus(corpus);
  for (const std::string& code : LabelSet::language_codes()) {
    dump(lists.at(code), "wordlist." + code + ".txt");
  }
  dump(build_gazetteer_from_corpus(corpus), "gazetteer.txt");
}

}  // namespace mixtag
