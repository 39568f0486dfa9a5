/* Copyright 2026 The deprecparse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Release-notes HTML scanning. Real documentation pages are rarely
// well-formed, so the scanner works on a flat stream of tags and text and
// recovers from unclosed or stray elements.

#include <algorithm>
#include <cctype>
#include <optional>

#include "deprecparse/corpus.h"

namespace deprecparse {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void AppendUtf8(uint32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::optional<uint32_t> NamedEntity(std::string_view name) {
  static const std::pair<std::string_view, uint32_t> kNames[] = {
      {"amp", '&'},      {"lt", '<'},       {"gt", '>'},
      {"quot", '"'},     {"apos", '\''},    {"nbsp", ' '},
      {"ndash", 0x2013}, {"mdash", 0x2014}, {"hellip", 0x2026},
      {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"ldquo", 0x201C},
      {"rdquo", 0x201D}, {"para", 0x00B6},  {"copy", 0x00A9},
  };
  for (const auto &[n, cp] : kNames) {
    if (n == name) return cp;
  }
  return std::nullopt;
}

std::string DecodeEntities(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    const size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    const std::string_view body = s.substr(i + 1, semi - i - 1);
    std::optional<uint32_t> cp;
    if (body.size() > 1 && body[0] == '#') {
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const std::string digits(body.substr(hex ? 2 : 1));
      if (!digits.empty() &&
          std::all_of(digits.begin(), digits.end(), [&](char c) {
            return hex ? std::isxdigit(static_cast<unsigned char>(c))
                       : std::isdigit(static_cast<unsigned char>(c));
          })) {
        const unsigned long v = std::stoul(digits, nullptr, hex ? 16 : 10);
        if (v > 0 && v <= 0x10FFFF) cp = static_cast<uint32_t>(v);
      }
    } else {
      cp = NamedEntity(body);
    }
    if (!cp) {
      out.push_back('&');
      continue;
    }
    AppendUtf8(*cp, &out);
    i = semi;
  }
  return out;
}

struct Tag {
  std::string name;
  bool end = false;
  bool self_closing = false;
  std::string cls;  // class attribute
};

bool IsVoid(const std::string &name) {
  static const char *kVoid[] = {"br", "img", "hr", "input", "meta",
                                "link", "wbr", "area", "col", "source"};
  return std::any_of(std::begin(kVoid), std::end(kVoid),
                     [&](const char *v) { return name == v; });
}

bool IsBlock(const std::string &name) {
  static const char *kBlock[] = {"p",  "div", "br", "li", "ul", "ol",
                                 "dl", "dd",  "dt", "tr", "td", "th",
                                 "blockquote", "pre", "table"};
  return std::any_of(std::begin(kBlock), std::end(kBlock),
                     [&](const char *v) { return name == v; });
}

int HeadingLevel(const std::string &name) {
  if (name.size() == 2 && name[0] == 'h' && name[1] >= '1' && name[1] <= '6') {
    return name[1] - '0';
  }
  return 0;
}

bool HasClass(const std::string &classes, std::string_view cls) {
  size_t i = 0;
  while (i < classes.size()) {
    while (i < classes.size() && IsSpace(classes[i])) ++i;
    size_t j = i;
    while (j < classes.size() && !IsSpace(classes[j])) ++j;
    if (std::string_view(classes).substr(i, j - i) == cls) return true;
    i = j;
  }
  return false;
}

std::string NormalizeHeading(const std::string &text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      space = !out.empty();
    } else {
      if (space) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
  }
  // Permalink markers and trailing punctuation.
  for (;;) {
    if (out.size() >= 2 && out.compare(out.size() - 2, 2, "\xC2\xB6") == 0) {
      out.resize(out.size() - 2);
    } else if (!out.empty() && (out.back() == '#' || out.back() == ':' ||
                                out.back() == ' ' || out.back() == '.')) {
      out.pop_back();
    } else {
      break;
    }
  }
  return Lower(out);
}

class Extractor {
 public:
  Extractor(std::string_view html, const ExtractOptions &options)
      : html_(html), options_(options) {
    for (const std::string &h : options.headings) {
      headings_.push_back(NormalizeHeading(h));
    }
  }

  ExtractResult Run() {
    size_t i = 0;
    while (i < html_.size()) {
      if (html_[i] != '<') {
        const size_t next = std::min(html_.find('<', i), html_.size());
        Text(DecodeEntities(html_.substr(i, next - i)));
        i = next;
        continue;
      }
      i = Markup(i);
    }
    if (in_item_) {
      Warn("list item not closed before end of document");
      FinishItem();
    }
    return std::move(result_);
  }

 private:
  struct Open {
    std::string name;
    bool code = false;
  };

  void Warn(const std::string &message) { result_.warnings.push_back(message); }

  // Handles the markup starting at `i`; returns the position after it.
  size_t Markup(size_t i) {
    if (html_.compare(i, 4, "<!--") == 0) {
      const size_t end = html_.find("-->", i + 4);
      if (end == std::string_view::npos) {
        Warn("unterminated comment");
        return html_.size();
      }
      return end + 3;
    }
    if (i + 1 < html_.size() && (html_[i + 1] == '!' || html_[i + 1] == '?')) {
      const size_t end = html_.find('>', i);
      return end == std::string_view::npos ? html_.size() : end + 1;
    }
    Tag tag;
    size_t j = i + 1;
    if (j < html_.size() && html_[j] == '/') {
      tag.end = true;
      ++j;
    }
    const size_t name_start = j;
    while (j < html_.size() &&
           (std::isalnum(static_cast<unsigned char>(html_[j])) ||
            html_[j] == '-' || html_[j] == ':')) {
      ++j;
    }
    if (j == name_start) {
      Text("<");
      return i + 1;
    }
    tag.name = Lower(html_.substr(name_start, j - name_start));
    // Attributes, honoring quotes so '>' inside values does not end the tag.
    while (j < html_.size() && html_[j] != '>') {
      if (IsSpace(html_[j])) {
        ++j;
        continue;
      }
      if (html_[j] == '/') {
        tag.self_closing = true;
        ++j;
        continue;
      }
      const size_t an = j;
      while (j < html_.size() && !IsSpace(html_[j]) && html_[j] != '=' &&
             html_[j] != '>' && html_[j] != '/') {
        ++j;
      }
      const std::string attr = Lower(html_.substr(an, j - an));
      while (j < html_.size() && IsSpace(html_[j])) ++j;
      std::string value;
      if (j < html_.size() && html_[j] == '=') {
        ++j;
        while (j < html_.size() && IsSpace(html_[j])) ++j;
        if (j < html_.size() && (html_[j] == '"' || html_[j] == '\'')) {
          const char q = html_[j];
          const size_t close = html_.find(q, j + 1);
          if (close == std::string_view::npos) {
            Warn("unterminated attribute value in <" + tag.name + ">");
            return html_.size();
          }
          value = html_.substr(j + 1, close - j - 1);
          j = close + 1;
        } else {
          const size_t vs = j;
          while (j < html_.size() && !IsSpace(html_[j]) && html_[j] != '>') ++j;
          value = html_.substr(vs, j - vs);
        }
      }
      if (attr == "class") tag.cls = DecodeEntities(value);
      if (j == an) ++j;  // never stall on a stray character
    }
    if (j >= html_.size()) {
      Warn("unterminated tag <" + tag.name + ">");
      return html_.size();
    }
    ++j;
    if (tag.end) {
      EndTag(tag.name);
    } else {
      StartTag(tag);
      if (tag.name == "script" || tag.name == "style") {
        const std::string close = "</" + tag.name;
        size_t k = j;
        while (k < html_.size() && Lower(html_.substr(k, close.size())) != close) {
          k = html_.find('<', k + 1);
          if (k == std::string_view::npos) k = html_.size();
        }
        j = k;
      }
    }
    return j;
  }

  void StartTag(const Tag &tag) {
    const int level = HeadingLevel(tag.name);
    if (level > 0) {
      if (in_item_) {
        Warn("heading inside a list item; item closed");
        FinishItem();
      }
      if (active_level_ > 0 && level <= active_level_) active_level_ = 0;
      heading_level_ = level;
      heading_text_.clear();
      return;
    }
    if (active_level_ == 0) return;
    const bool is_list = tag.name == "ul" || tag.name == "ol";
    if (tag.name == "li") {
      if (!in_item_) {
        BeginItem();
        return;
      }
      if (lists_ == item_lists_) {
        FinishItem();  // previous sibling left unclosed
        BeginItem();
        return;
      }
    }
    if (is_list) ++lists_;
    if (!in_item_) return;
    if (IsBlock(tag.name)) pending_space_ = true;
    if (IsVoid(tag.name) || tag.self_closing) return;
    const bool code = tag.name == "code" || tag.name == "tt" ||
                      tag.name == "kbd" || tag.name == "samp" ||
                      (tag.name == "span" && HasClass(tag.cls, "pre"));
    if (code && code_depth_ == 0) {
      FlushSpace();
      code_begin_ = text_.size();
    }
    if (code) ++code_depth_;
    open_.push_back({tag.name, code});
  }

  void EndTag(const std::string &name) {
    const int level = HeadingLevel(name);
    if (level > 0) {
      if (heading_level_ == level) {
        const std::string h = NormalizeHeading(heading_text_);
        if (std::find(headings_.begin(), headings_.end(), h) !=
            headings_.end()) {
          active_level_ = level;
          lists_ = 0;
        }
        heading_level_ = 0;
      }
      return;
    }
    if (active_level_ == 0) return;
    const bool is_list = name == "ul" || name == "ol";
    if (in_item_ && name == "li" && lists_ == item_lists_) {
      FinishItem();
      return;
    }
    if (in_item_ && is_list && lists_ == item_lists_) {
      FinishItem();  // </li> omitted before the end of the list
    }
    if (is_list && lists_ > 0) --lists_;
    if (!in_item_) return;
    if (IsBlock(name)) pending_space_ = true;
    auto it = std::find_if(open_.rbegin(), open_.rend(),
                           [&](const Open &o) { return o.name == name; });
    if (it == open_.rend()) return;  // stray end tag
    const size_t keep = open_.rend() - it - 1;
    while (open_.size() > keep) {
      if (open_.back().code) CloseCode();
      open_.pop_back();
    }
  }

  void Text(const std::string &text) {
    if (heading_level_ > 0) heading_text_ += text;
    if (!in_item_) return;
    for (char c : text) {
      if (IsSpace(c)) {
        pending_space_ = true;
      } else {
        FlushSpace();
        text_.push_back(c);
      }
    }
  }

  void FlushSpace() {
    if (pending_space_ && !text_.empty()) text_.push_back(' ');
    pending_space_ = false;
  }

  void CloseCode() {
    if (--code_depth_ > 0) return;
    if (text_.size() > code_begin_) {
      spans_.push_back({code_begin_, text_.size()});
    } else {
      Warn("empty code element skipped");
    }
  }

  void BeginItem() {
    in_item_ = true;
    item_lists_ = lists_;
    text_.clear();
    spans_.clear();
    open_.clear();
    code_depth_ = 0;
    pending_space_ = false;
  }

  void FinishItem() {
    if (code_depth_ > 0) {
      Warn("code element not closed inside list item");
      code_depth_ = 1;
      CloseCode();
    }
    in_item_ = false;
    if (text_.empty()) return;
    DeprecationItem item;
    item.text = std::move(text_);
    item.code = std::move(spans_);
    item.library = options_.library;
    item.version = options_.version;
    item.url = options_.url;
    result_.items.push_back(std::move(item));
    text_.clear();
    spans_.clear();
  }

  std::string_view html_;
  const ExtractOptions &options_;
  std::vector<std::string> headings_;
  ExtractResult result_;

  int heading_level_ = 0;
  std::string heading_text_;
  int active_level_ = 0;
  int lists_ = 0;  // open lists inside the active section

  bool in_item_ = false;
  int item_lists_ = 0;
  std::string text_;
  std::vector<DeprecationItem::Span> spans_;
  std::vector<Open> open_;
  int code_depth_ = 0;
  size_t code_begin_ = 0;
  bool pending_space_ = false;
};

}  // namespace

ExtractResult ExtractDeprecations(std::string_view html,
                                  const ExtractOptions &options) {
  return Extractor(html, options).Run();
}

}  // namespace deprecparse
