// Copyright 2026 The ivauction Authors.
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

#include "ivauction/instance_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ivauction {

using nlohmann::json;

ParseError::ParseError(std::string const &message, int line, int column)
  : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message)
  , line_(line)
  , column_(column)
{}

namespace {

constexpr int kFormatVersion = 1;

std::pair<int, int> line_column(std::string_view text, std::size_t byte)
{
  int line   = 1;
  int column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
  {
    if (text[i] == '\n')
    {
      ++line;
      column = 1;
    }
    else
    {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void fail(std::string const &message)
{
  // Structural errors are reported against the document root.
  throw ParseError(message, 1, 1);
}

json const &field(json const &obj, char const *name)
{
  if (!obj.is_object() || !obj.contains(name))
  {
    fail(std::string("missing field '") + name + "'");
  }
  return obj.at(name);
}

int int_field(json const &obj, char const *name)
{
  auto const &v = field(obj, name);
  if (!v.is_number_integer())
  {
    fail(std::string("field '") + name + "' must be an integer");
  }
  return v.get<int>();
}

Money money(json const &v)
{
  if (v.is_string())
  {
    try
    {
      return parse_rational(v.get<std::string>());
    }
    catch (InvalidInput const &e)
    {
      fail(e.what());
    }
  }
  if (v.is_number_integer())
  {
    return Money(v.get<long long>());
  }
  fail("money values must be decimal strings");
}

std::vector<std::vector<Money>> dense_tables(json const &tables)
{
  if (!tables.is_array())
  {
    fail("'tables' must be an array with one entry per bidder");
  }
  std::vector<std::vector<Money>> out;
  for (auto const &t : tables)
  {
    if (!t.is_array())
    {
      fail("this valuation type needs one array per bidder indexed by quality");
    }
    std::vector<Money> row;
    for (auto const &v : t)
    {
      row.push_back(money(v));
    }
    out.push_back(std::move(row));
  }
  return out;
}

template <class KeyParser>
auto keyed_tables(json const &tables, KeyParser parse_key)
{
  using Key = decltype(parse_key(std::string()));
  if (!tables.is_array())
  {
    fail("'tables' must be an array with one entry per bidder");
  }
  std::vector<std::map<Key, Money>> out;
  for (auto const &t : tables)
  {
    if (!t.is_object())
    {
      fail("this valuation type needs one object per bidder keyed by canonical keys");
    }
    std::map<Key, Money> row;
    for (auto const &[key, v] : t.items())
    {
      try
      {
        row.emplace(parse_key(key), money(v));
      }
      catch (InvalidInput const &e)
      {
        fail(e.what());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

InstanceData parse_instance_data(std::string_view text)
{
  json doc;
  try
  {
    doc = json::parse(text.begin(), text.end());
  }
  catch (json::parse_error const &e)
  {
    auto [line, column] = line_column(text, e.byte);
    throw ParseError(std::string("syntax error: ") + e.what(), line, column);
  }

  if (!doc.is_object())
  {
    fail("instance must be a JSON object");
  }
  if (int version = int_field(doc, "version"); version != kFormatVersion)
  {
    fail("unsupported version " + std::to_string(version));
  }

  InstanceData data;
  data.n = int_field(doc, "n");
  data.k = int_field(doc, "k");

  auto const &groups = field(doc, "groups");
  if (!groups.is_array())
  {
    fail("'groups' must be an array of arrays");
  }
  for (auto const &g : groups)
  {
    if (!g.is_array())
    {
      fail("'groups' must be an array of arrays");
    }
    std::vector<BidderId> ids;
    for (auto const &b : g)
    {
      if (!b.is_number_integer())
      {
        fail("bidder ids must be integers");
      }
      ids.push_back(b.get<int>());
    }
    data.groups.push_back(std::move(ids));
  }

  auto const &valuation = field(doc, "valuation");
  auto const &type      = field(valuation, "type");
  auto const &tables    = field(valuation, "tables");
  if (!type.is_string())
  {
    fail("'valuation.type' must be a string");
  }
  std::string const kind = type.get<std::string>();
  int const         k    = data.k;
  int const         l    = static_cast<int>(data.groups.size());

  if (kind == "binary_symmetric")
  {
    data.valuation = BinarySymmetric{dense_tables(tables)};
  }
  else if (kind == "shared_quality")
  {
    data.valuation = SharedQuality{dense_tables(tables)};
  }
  else if (kind == "shared_quality_grouped")
  {
    data.valuation = SharedQualityGrouped{keyed_tables(tables, [](std::string const &key) {
      return parse_quality_key(key);
    })};
  }
  else if (kind == "general_symmetric")
  {
    if (k < 2)
    {
      fail("k must be >= 2");
    }
    data.valuation = GeneralSymmetric{keyed_tables(tables, [k, l](std::string const &key) {
      return parse_histogram_key(key, k, l);
    })};
  }
  else
  {
    fail("unknown valuation type '" + kind + "'");
  }
  return data;
}

Instance parse_instance(std::string_view text)
{
  return Instance(parse_instance_data(text));
}

std::string serialize_instance(InstanceData const &data)
{
  json doc;
  doc["version"] = kFormatVersion;
  doc["n"]       = data.n;
  doc["k"]       = data.k;
  doc["groups"]  = data.groups;

  json tables = json::array();
  std::string type;
  auto dense  = [&](std::vector<std::vector<Money>> const &rows) {
    for (auto const &row : rows)
    {
      json arr = json::array();
      for (auto const &v : row)
      {
        arr.push_back(format_money(v));
      }
      tables.push_back(std::move(arr));
    }
  };
  if (auto const *m = std::get_if<BinarySymmetric>(&data.valuation))
  {
    type = "binary_symmetric";
    dense(m->tables);
  }
  else if (auto const *m = std::get_if<SharedQuality>(&data.valuation))
  {
    type = "shared_quality";
    dense(m->tables);
  }
  else if (auto const *m = std::get_if<SharedQualityGrouped>(&data.valuation))
  {
    type = "shared_quality_grouped";
    for (auto const &row : m->tables)
    {
      json obj = json::object();
      for (auto const &[key, v] : row)
      {
        obj[quality_key(key)] = format_money(v);
      }
      tables.push_back(std::move(obj));
    }
  }
  else
  {
    type = "general_symmetric";
    for (auto const &row : std::get<GeneralSymmetric>(data.valuation).tables)
    {
      json obj = json::object();
      for (auto const &[key, v] : row)
      {
        obj[histogram_key(key, data.k)] = format_money(v);
      }
      tables.push_back(std::move(obj));
    }
  }
  doc["valuation"] = {{"type", type}, {"tables", std::move(tables)}};
  return doc.dump(2) + "\n";
}

Instance load_instance_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw InvalidInput("cannot open instance file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void save_instance_file(std::string const &path, InstanceData const &data)
{
  std::ofstream out(path);
  if (!out)
  {
    throw InvalidInput("cannot write instance file '" + path + "'");
  }
  out << serialize_instance(data);
}

}  // namespace ivauction
