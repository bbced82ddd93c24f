#!/usr/bin/env python3
"""Regenerates the XML fixtures in this directory and prints oracle values.

The oracle section re-implements thread ranking and snippet retrieval from
scratch so the C++ tests can compare against values frozen from here.
"""

import html
import json
import math
import re
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
BASE = "https://stackoverflow.com"


def body(*parts):
    """parts: ("p", text) or ("code", code)."""
    out = []
    for kind, value in parts:
        if kind == "p":
            out.append("<p>" + html.escape(value, quote=False) + "</p>")
        else:
            out.append("<pre><code>" + html.escape(value, quote=False) + "\n</code></pre>")
    return "\n".join(out)


def attr(value):
    return html.escape(str(value), quote=True).replace("\n", "&#xA;")


def row(**fields):
    return "  <row " + " ".join(f'{k}="{attr(v)}"' for k, v in fields.items()) + " />"


# (id, title, tags, score, accepted, answers[(id, score, body)])
THREADS = [
    (26575009, "Best strategy to add lines of text to a text file", ["java", "file-io"], 12, None, [
        (26575100, 7, body(("p", "Open the writer in append mode:"),
                           ("code", 'try (BufferedWriter w = new BufferedWriter(new FileWriter("out.txt", true))) {\n'
                                    '    w.write("more text");\n    w.newLine();\n}'))),
        (26575200, 3, body(("code", 'Files.write(path, lines, StandardOpenOption.APPEND);'),
                           ("p", "or with a PrintWriter"),
                           ("code", 'PrintWriter out = new PrintWriter(new FileWriter(file, true));\nout.println(line);'))),
        (26575300, 1, body(("code", 'FileUtils.writeLines(file, lines, true);'))),
    ]),
    (309424, "How do I read / convert an InputStream into a String in Java?", ["java", "string", "io", "inputstream"], 4000, 309448, [
        (350723, 2500, body(("p", "Apache Commons:"), ("code", 'String myString = IOUtils.toString(myInputStream, "UTF-8");'))),
        (309448, 1800, body(("code", 'Scanner s = new Scanner(inputStream).useDelimiter("\\\\A");\nString result = s.hasNext() ? s.next() : "";'))),
        (35446009, 900, body(("code", 'String text = new String(in.readAllBytes(), StandardCharsets.UTF_8);'),
                             ("code", 'String text = new BufferedReader(new InputStreamReader(in))\n    .lines().collect(Collectors.joining("\\n"));'))),
    ]),
    (22621400, "How to add a custom JPanel to a JFrame", ["java", "swing", "jframe", "jpanel"], 9, None, [
        (22621450, 20, body(("code", 'frame.getContentPane().add(panel);'))),
        (22621494, 15, body(("code", 'JFrame frame = new JFrame("Demo");\nJPanel panel = new JPanel();\n'
                                     'panel.add(new JLabel("Hello"));\nframe.add(panel);\nframe.pack();\nframe.setVisible(true);'))),
        (22621500, 2, body(("p", "Call pack() after adding components."))),
    ]),
    (16088994, "Complete bubble sort of an int array", ["java", "sorting", "bubble-sort"], 6, None, [
        (16089042, 20, body(("code", 'static void bubbleSort(int[] a) {\n    for (int i = 0; i < a.length - 1; i++)\n'
                                     '        for (int j = 0; j < a.length - 1 - i; j++)\n'
                                     '            if (a[j] > a[j + 1]) { int t = a[j]; a[j] = a[j + 1]; a[j + 1] = t; }\n}'))),
        (16089100, 5, body(("code", 'Arrays.sort(a);'))),
    ]),
    (2000001, "Split string by whitespaces in Java", ["java", "string", "split"], 30, None, [
        (2000002, 30, body(("code", 'String[] parts = s.split("\\\\s+");'))),
        (2000003, 10, body(("code", 'StringTokenizer st = new StringTokenizer(s);'))),
        (2000004, 10, body(("code", 'String[] parts = Pattern.compile("\\\\s+").split(s);'))),
    ]),
    (2000010, "Sorting ArrayList<Integer> quickly", ["java", "sorting", "arraylist"], 3, 2000012, [
        (2000011, 4, body(("code", 'Collections.sort(list);'))),
        (2000012, 4, body(("code", 'list.sort(Comparator.naturalOrder());'))),
    ]),
    (2000020, "Convert int to String in Java", ["java", "string", "int"], 50, None, [
        (2000021, 40, body(("code", 'String s = String.valueOf(i);'))),
        (2000022, 12, body(("code", 'String s = Integer.toString(i);'))),
    ]),
    (2000030, "How to generate random integers within a specific range in Java?", ["java", "random"], 80, None, [
        (2000031, 70, body(("code", 'int n = ThreadLocalRandom.current().nextInt(min, max + 1);'))),
        (2000032, 20, body(("code", 'Random r = new Random();\nint n = r.nextInt(max - min + 1) + min;'))),
    ]),
    (2000040, "Returning an iterator from a method", ["java", "iterator"], 2, None, [
        (2000041, 3, body(("code", 'public Iterator<T> iterator() {\n    return items.iterator();\n}'))),
    ]),
    (2000050, "JFrame is closed when button clicked", ["java", "swing", "jframe"], 1, None, [
        (2000051, 2, body(("code", 'button.addActionListener(e -> frame.dispose());'))),
    ]),
    (2000060, "How to write a string to a text file", ["java", "file-io", "string"], 25, None, [
        (2000061, 22, body(("code", 'Files.writeString(Path.of("out.txt"), text);'))),
        (2000062, 8, body(("code", 'try (PrintWriter out = new PrintWriter("out.txt")) {\n    out.println(text);\n}'))),
    ]),
    (2000070, "Remove element from list while iterating", ["java", "list", "iterator"], 40, None, [
        (2000071, 35, body(("code", 'list.removeIf(x -> x.isEmpty());'))),
        (2000072, 9, body(("code", 'Iterator<String> it = list.iterator();\nwhile (it.hasNext()) {\n    if (it.next().isEmpty()) it.remove();\n}'))),
    ]),
    (2000080, "Read all lines of a file into a list", ["java", "file-io", "list"], 14, None, [
        (2000081, 13, body(("code", 'List<String> lines = Files.readAllLines(path);'))),
    ]),
    (2000090, "Parse JSON string to object", ["java", "json"], 11, None, [
        (2000091, 10, body(("code", 'Foo foo = new ObjectMapper().readValue(json, Foo.class);'))),
        (2000092, 6, body(("code", 'Foo foo = new Gson().fromJson(json, Foo.class);'))),
    ]),
    (2000100, "Iterate over map entries", ["java", "hashmap"], 21, None, [
        (2000101, 19, body(("code", 'for (Map.Entry<K, V> e : map.entrySet()) {\n    use(e.getKey(), e.getValue());\n}'))),
    ]),
    (2000110, "Format a date as a string", ["java", "date"], 7, None, [
        (2000111, 6, body(("code", 'String s = new SimpleDateFormat("yyyy-MM-dd").format(date);'))),
    ]),
    (2000120, "Connect to a socket server", ["java", "sockets"], 5, None, []),
    (2000130, "Copy an array into another array", ["java", "arrays"], 4, None, [
        (2000131, 3, body(("p", "Use System.arraycopy or Arrays.copyOf."))),
    ]),
    (2000140, "Print stack trace to string", ["java", "exception"], 9, None, [
        (2000141, 8, body(("code", 'StringWriter sw = new StringWriter();'), ("code", 'PrintWriter pw = new PrintWriter(sw);'),
                          ("code", 'e.printStackTrace(pw);'), ("code", 'String trace = sw.toString();'))),
    ]),
    (2000150, "Compare two strings for equality", ["java", "string"], 60, None, [
        (2000151, 55, body(("code", 'boolean same = a.equals(b);'))),
        (2000152, 0, body(("code", 'boolean same = Objects.equals(a, b);'))),
    ]),
]

# Rows that must not reach the store.
EXTRA_ROWS = [
    row(Id=3000001, PostTypeId=1, Score=5, Title="Split string by whitespace in Python", Tags="<python><string>",
        Body="<p>py</p>"),
    row(Id=3000002, PostTypeId=2, ParentId=3000001, Score=4, Body=body(("code", "s.split()"))),
    row(Id=3000003, PostTypeId=5, Score=0, Body="<p>tag wiki</p>"),
]


def write_twenty():
    lines = ['<?xml version="1.0" encoding="utf-8"?>', "<posts>"]
    for qid, title, tags, score, accepted, answers in THREADS:
        fields = dict(Id=qid, PostTypeId=1, Score=score, Title=title, Tags="".join(f"<{t}>" for t in tags),
                      Body=body(("p", "Question body for " + title)))
        if accepted:
            fields["AcceptedAnswerId"] = accepted
        lines.append(row(**fields))
    for qid, _, _, _, _, answers in THREADS:
        for aid, ascore, abody in answers:
            lines.append(row(Id=aid, PostTypeId=2, ParentId=qid, Score=ascore, Body=abody))
    lines.extend(EXTRA_ROWS)
    lines.append("</posts>")
    (HERE / "twenty_threads.xml").write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_small():
    lines = ['<?xml version="1.0" encoding="utf-8"?>', "<posts>",
             row(Id=1, PostTypeId=1, Score=3, Title="Sort a list of strings", Tags="<java><sorting>",
                 AcceptedAnswerId=12, Body="<p>q</p>"),
             row(Id=2, PostTypeId=1, Score=1, Title="Read a file line by line", Tags="<java><file>", Body="<p>q</p>"),
             row(Id=3, PostTypeId=1, Score=0, Title="Center a div", Tags="<css>", Body="<p>q</p>"),
             row(Id=11, PostTypeId=2, ParentId=1, Score=2, Body=body(("code", "Collections.sort(list);"))),
             row(Id=12, PostTypeId=2, ParentId=1, Score=2,
                 Body=body(("code", "list.sort(null);"), ("p", "or"), ("code", "list.stream().sorted()"))),
             row(Id=21, PostTypeId=2, ParentId=2, Score=5, Body=body(("p", "Use a BufferedReader."))),
             row(Id=31, PostTypeId=2, ParentId=3, Score=1, Body=body(("code", "margin: auto;"))),
             row(Id=99, PostTypeId=2, ParentId=777, Score=1, Body=body(("code", "orphan();"))),
             "  <row Id=\"55\" PostTypeId=\"1\" Title=\"broken",
             "</posts>"]
    (HERE / "small.xml").write_text("\n".join(lines) + "\n", encoding="utf-8")


# ---- oracle -----------------------------------------------------------------

DETERMINERS = {"a", "an", "the"}


def tokens(text):
    return [t for t in re.findall(r"[a-z0-9+#_\x80-￿]+", text.lower()) if t not in DETERMINERS]


def oracle_rank(query):
    docs = []
    for qid, title, tags, score, _, _ in THREADS:
        title_toks = set(tokens(title))
        tag_toks = set()
        for tag in tags:
            tag_toks |= set(tokens(tag))
        docs.append((qid, score, title_toks, tag_toks))
    n = len(docs)

    def idf(t):
        df = sum(1 for d in docs if t in d[2] or t in d[3])
        return math.log(1 + n / df) if df else 0.0

    scored = []
    for qid, score, tt, gt in docs:
        s = 0.0
        for t in sorted(set(tokens(query))):
            w = idf(t)
            if t in tt:
                s += w
            if t in gt:
                s += 2 * w
        if s > 0:
            scored.append((-s, -score, qid, s))
    scored.sort()
    return [(qid, s) for _, _, qid, s in scored]


def thread_answers(qid):
    for tq, _, _, _, accepted, answers in THREADS:
        if tq == qid:
            return sorted(answers, key=lambda a: (-a[1], 0 if a[0] == accepted else 1, a[0]))
    raise KeyError(qid)


def code_blocks(b):
    return [html.unescape(m) for m in re.findall(r"<pre><code>(.*?)</code></pre>", b, re.S) if m.strip()]


def oracle_retrieve(query, max_threads=4, per_thread=3):
    out = []
    for rank, (qid, _) in enumerate(oracle_rank(query)[:max_threads], start=1):
        taken = 0
        for aid, ascore, b in thread_answers(qid):
            for code in code_blocks(b):
                if taken == per_thread:
                    break
                out.append((rank, aid, ascore))
                taken += 1
    return out


def main():
    write_twenty()
    write_small()
    counts = {
        "questions": len(THREADS),
        "answers": sum(len(t[5]) for t in THREADS),
        "snippets": sum(len(code_blocks(a[2])) for t in THREADS for a in t[5]),
    }
    report = {"counts": counts, "queries": {}}
    for q in ["add lines to text file", "convert inputstream to string", "complete bubble sort",
              "add custom jpanel to jframe", "split string by", "sort arraylist", "print stack trace",
              "unknownzzz"]:
        report["queries"][q] = {
            "threads": [(qid, round(s, 12)) for qid, s in oracle_rank(q)[:4]],
            "snippets": oracle_retrieve(q),
        }
    json.dump(report, sys.stdout, indent=1)
    print()


if __name__ == "__main__":
    main()
