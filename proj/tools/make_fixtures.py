#!/usr/bin/env python3
# Copyright 2026 The procmine Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates fixtures/camunda/*.csv (engine history tables) deterministically."""

import csv
import datetime as dt
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "camunda"
EPOCH = dt.datetime(2026, 1, 5, 8, 0, 0, tzinfo=dt.timezone.utc)

ACTINST = ["id_", "proc_def_key_", "proc_inst_id_", "act_id_", "act_name_", "act_type_",
           "start_time_", "end_time_", "assignee_"]
DETAIL = ["act_inst_id_", "name_", "var_type_", "text_", "long_", "double_", "time_"]


def iso(t):
    return t.strftime("%Y-%m-%dT%H:%M:%S.") + f"{t.microsecond // 1000:03d}Z"


class Builder:
    def __init__(self, rng):
        self.rng = rng
        self.rows = []
        self.details = []
        self.next_id = 1

    def act(self, key, inst, act_id, name, act_type, start, minutes, assignee="", complete=True):
        row_id = f"ai-{self.next_id:05d}"
        self.next_id += 1
        end = start + dt.timedelta(minutes=minutes)
        self.rows.append([row_id, key, inst, act_id, name, act_type, iso(start),
                          iso(end) if complete else "", assignee])
        return row_id, end

    def detail(self, act_inst, name, var_type, text="", long="", double=""):
        self.details.append([act_inst, name, var_type, text, long, double, ""])


def invoice_case(b, n, start):
    rng = b.rng
    key, inst = "invoice", f"inv-{n:03d}"
    amount = rng.choice([120.0, 250.0, 480.0, 730.0, 990.0, 1250.0, 2400.0, 3900.0, 7200.0])
    creditor = rng.choice(["Acme Corp", "Globex", "Initech", "Umbrella"])
    sid, t = b.act(key, inst, "StartEvent_1", "Invoice received", "startEvent", start, 0)
    b.detail(sid, "amount", "double", double=repr(amount))
    b.detail(sid, "creditor", "string", text=creditor)
    b.detail(sid, "category", "string", text=rng.choice(["Travel", "Misc", "Software"]))
    _, t = b.act(key, inst, "assignApprover", "Assign Approver", "userTask", t,
                 rng.randint(5, 60), "demo")
    reviews = 0
    while True:
        _, t = b.act(key, inst, "gw_merge", "", "exclusiveGateway", t, 0)
        approver = "john" if amount < 2000 else "mary"
        aid, t = b.act(key, inst, "approveInvoice", "Approve Invoice", "userTask", t,
                       rng.randint(30, 600), approver)
        approved = amount < 1000 or reviews > 0
        b.detail(aid, "approved", "boolean", long="1" if approved else "0")
        _, t = b.act(key, inst, "gw_approved", "Invoice approved?", "exclusiveGateway", t, 0)
        if approved:
            _, t = b.act(key, inst, "prepareBankTransfer", "Prepare Bank Transfer", "userTask", t,
                         rng.randint(60, 1440), "peter")
            _, t = b.act(key, inst, "archiveInvoice", "Archive Invoice", "serviceTask", t, 1)
            b.act(key, inst, "end_processed", "Invoice processed", "noneEndEvent", t, 0)
            return
        _, t = b.act(key, inst, "reviewInvoice", "Review Invoice", "userTask", t,
                     rng.randint(60, 2880), "demo")
        reviews += 1
        _, t = b.act(key, inst, "gw_review", "Review successful?", "exclusiveGateway", t, 0)
        if rng.random() < 0.25:
            b.act(key, inst, "end_rejected", "Invoice not processed", "noneEndEvent", t, 0)
            return


def leave_case(b, n, start):
    rng = b.rng
    key, inst = "leave", f"lv-{n:03d}"
    sid, t = b.act(key, inst, "start", "Request submitted", "startEvent", start, 0)
    b.detail(sid, "days", "long", long=str(rng.randint(1, 15)))
    _, t = b.act(key, inst, "submitRequest", "Submit Request", "userTask", t,
                 rng.randint(5, 30), rng.choice(["anna", "bob"]))
    _, t = b.act(key, inst, "split", "", "parallelGateway", t, 0)
    first, second = rng.sample([1, 2], 2)
    _, t1 = b.act(key, inst, "checkBalance", "Check Balance", "serviceTask",
                  t + dt.timedelta(seconds=first), rng.randint(1, 10))
    _, t2 = b.act(key, inst, "notifyManager", "Notify Manager", "sendTask",
                  t + dt.timedelta(seconds=second), rng.randint(1, 10))
    _, t = b.act(key, inst, "join", "", "parallelGateway", max(t1, t2), 0)
    _, t = b.act(key, inst, "decide", "Decide", "userTask", t, rng.randint(30, 300), "mary")
    b.act(key, inst, "end", "Request handled", "noneEndEvent", t, 0)


def main():
    b = Builder(random.Random(20260105))
    for n in range(1, 41):
        invoice_case(b, n, EPOCH + dt.timedelta(hours=7 * n, minutes=b.rng.randint(0, 59)))
    for n in range(1, 16):
        leave_case(b, n, EPOCH + dt.timedelta(hours=11 * n, minutes=b.rng.randint(0, 59)))
    # Two instances still running: their last activity has no end time yet.
    last = EPOCH + dt.timedelta(days=30)
    b.act("invoice", "inv-041", "StartEvent_1", "Invoice received", "startEvent", last, 0)
    b.act("invoice", "inv-041", "assignApprover", "Assign Approver", "userTask", last, 0, "demo",
          complete=False)
    b.act("leave", "lv-016", "start", "Request submitted", "startEvent", last, 0)
    b.act("leave", "lv-016", "submitRequest", "Submit Request", "userTask", last, 0, "anna",
          complete=False)

    OUT.mkdir(parents=True, exist_ok=True)
    for name, header, rows in (("act_hi_actinst.csv", ACTINST, b.rows),
                               ("act_hi_detail.csv", DETAIL, b.details)):
        with open(OUT / name, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\r\n")
            w.writerow(header)
            w.writerows(rows)


if __name__ == "__main__":
    main()
